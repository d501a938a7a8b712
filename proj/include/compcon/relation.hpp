#pragma once

// Finite relations between label lists: the constraint category used by every
// encoding in this library.
//
// Index conventions
//   * Label lists are ordered; a label's position is its index.
//   * tensor_disjoint concatenates lists (left factor first).
//   * tensor_product pairs labels row-major with the first factor most
//     significant: (i, i') sits at index i * |right| + i'. Product labels are
//     spelled "(a,b)".
//   * The unit for tensor_disjoint is the empty list; the unit for
//     tensor_product is the singleton list ["*"].

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace compcon {

// Sorted, duplicate-free set of indices.
using IndexSet = std::vector<std::size_t>;

class LabelList {
public:
    LabelList() = default;
    LabelList(std::initializer_list<std::string> labels);
    explicit LabelList(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    const std::string& operator[](std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    auto begin() const noexcept { return labels_.begin(); }
    auto end() const noexcept { return labels_.end(); }

    std::optional<std::size_t> index_of(const std::string& label) const;

    // "[a,b,c]"
    std::string to_string() const;

    // Throws LabelCollision when the concatenation repeats a label.
    static LabelList concat(const LabelList& left, const LabelList& right);
    static LabelList product(const LabelList& left, const LabelList& right);
    static LabelList product_unit();

    friend bool operator==(const LabelList&, const LabelList&) = default;

private:
    std::vector<std::string> labels_;
};

class FiniteRelation {
public:
    using Pair = std::pair<std::size_t, std::size_t>;

    FiniteRelation() = default;
    FiniteRelation(LabelList src, LabelList dst);
    FiniteRelation(LabelList src, LabelList dst, std::span<const Pair> pairs);
    FiniteRelation(LabelList src, LabelList dst, std::initializer_list<Pair> pairs);

    static FiniteRelation identity(const LabelList& labels);
    static FiniteRelation full(const LabelList& src, const LabelList& dst);
    static FiniteRelation empty(const LabelList& src, const LabelList& dst) { return {src, dst}; }

    const LabelList& src() const noexcept { return src_; }
    const LabelList& dst() const noexcept { return dst_; }

    bool contains(std::size_t i, std::size_t j) const;
    // Pairs in lexicographic order.
    std::vector<Pair> pairs() const;
    std::size_t pair_count() const noexcept;

    FiniteRelation with(std::size_t i, std::size_t j) const;
    FiniteRelation without(std::size_t i, std::size_t j) const;

    friend bool operator==(const FiniteRelation&, const FiniteRelation&) = default;

private:
    void check_index(std::size_t i, std::size_t j) const;

    LabelList src_;
    LabelList dst_;
    // Row-major src x dst boolean matrix; the canonical form of the pair set.
    std::vector<std::uint8_t> cells_;
};

// second ∘ first. Throws BoundaryMismatch unless first.dst() == second.src().
FiniteRelation compose(const FiniteRelation& second, const FiniteRelation& first);
FiniteRelation converse(const FiniteRelation& rel);
FiniteRelation tensor_disjoint(const FiniteRelation& left, const FiniteRelation& right);
FiniteRelation tensor_product(const FiniteRelation& left, const FiniteRelation& right);
FiniteRelation meet(const FiniteRelation& a, const FiniteRelation& b);
bool leq(const FiniteRelation& a, const FiniteRelation& b);

// One relation per (a, b): the full relation minus that pair, in lexicographic
// order of (a, b).
std::vector<FiniteRelation> meet_generators(const LabelList& src, const LabelList& dst);

// {i | every j related to i lies in targets}
IndexSet pre_image(const FiniteRelation& rel, const IndexSet& targets);
// {j | i ~ j}
IndexSet related_set(const FiniteRelation& rel, std::size_t i);

// [*] -> A x A relating the unit to every diagonal (a, a).
FiniteRelation cup(const LabelList& labels);
// A x A -> [*], the converse of cup.
FiniteRelation cap(const LabelList& labels);

// Same pair pattern over new boundaries of equal sizes. This is how unitors and
// associators of the product tensor are applied.
FiniteRelation relabel(const FiniteRelation& rel, LabelList src, LabelList dst);

// Boundary check used by the encodings: throws BoundaryMismatch naming `what`.
void require_same_labels(const LabelList& expected, const LabelList& actual, const char* what);

}  // namespace compcon
