#pragma once

// Functions between block-partitioned finite sets, constrained by relations
// between block labels: f satisfies tau iff every element of block i lands in
// a block related to i.
//
// The enumeration oracles realize L(tau) extensionally. They never truncate:
// an instance above its cap raises ExplosionError.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compcon/relation.hpp"

namespace compcon {

struct Block {
    std::string label;
    std::size_t size = 1;

    friend bool operator==(const Block&, const Block&) = default;
};

class PartitionedFinSet {
public:
    PartitionedFinSet() = default;
    explicit PartitionedFinSet(std::vector<Block> blocks);

    static PartitionedFinSet concat(const PartitionedFinSet& a, const PartitionedFinSet& b);

    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    std::size_t total() const noexcept { return block_of_.size(); }
    std::size_t offset(std::size_t k) const { return offsets_.at(k); }
    std::size_t block_of(std::size_t element) const { return block_of_.at(element); }
    const LabelList& labels() const noexcept { return labels_; }

    friend bool operator==(const PartitionedFinSet& a, const PartitionedFinSet& b) { return a.blocks_ == b.blocks_; }

private:
    std::vector<Block> blocks_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> block_of_;
    LabelList labels_;
};

class PartitionedFunction {
public:
    PartitionedFunction() = default;
    PartitionedFunction(PartitionedFinSet dom, PartitionedFinSet cod, std::vector<std::size_t> map);

    static PartitionedFunction identity(const PartitionedFinSet& set);

    const PartitionedFinSet& dom() const noexcept { return dom_; }
    const PartitionedFinSet& cod() const noexcept { return cod_; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }
    std::size_t operator()(std::size_t x) const { return map_.at(x); }

    friend bool operator==(const PartitionedFunction&, const PartitionedFunction&) = default;

private:
    PartitionedFinSet dom_;
    PartitionedFinSet cod_;
    std::vector<std::size_t> map_;
};

std::optional<std::string> find_funcrel_violation(const PartitionedFunction& f, const FiniteRelation& rel);
bool check_funcrel(const PartitionedFunction& f, const FiniteRelation& rel);

PartitionedFunction compose(const PartitionedFunction& g, const PartitionedFunction& f);
// Disjoint union of functions; blocks concatenate like tensor_disjoint.
PartitionedFunction tensor(const PartitionedFunction& f, const PartitionedFunction& g);

// The least relation f satisfies: (i, j) iff some element of block i maps into block j.
FiniteRelation image_relation(const PartitionedFunction& f);

// Restriction of (f, rel) to the single element x: a one-element domain block
// carrying x's block label, and rel's row for that block.
struct ElementRestriction {
    PartitionedFunction function;
    FiniteRelation relation;
};
ElementRestriction restrict_to_element(const PartitionedFunction& f, const FiniteRelation& rel, std::size_t x);

inline constexpr std::uint64_t default_enumeration_cap = 1'000'000;

// All f : dom -> cod with check_funcrel(f, rel), in lexicographic order of
// their maps. Refuses when cod.total()^dom.total() exceeds cap.
std::vector<PartitionedFunction> enumerate_satisfying(const PartitionedFinSet& dom, const PartitionedFinSet& cod,
                                                      const FiniteRelation& rel,
                                                      std::uint64_t cap = default_enumeration_cap);

// {g . f | f in L(first), g in L(second)} subset of L(second . first), checked by
// forming every composite. Refuses when |L(first)| * |L(second)| exceeds cap.
bool oracle_laxity(const PartitionedFinSet& a, const PartitionedFinSet& b, const PartitionedFinSet& c,
                   const FiniteRelation& first, const FiniteRelation& second,
                   std::uint64_t cap = default_enumeration_cap);

// L(meet(x, y)) == L(x) ∩ L(y) as sets of functions.
bool oracle_intersectability(const PartitionedFinSet& dom, const PartitionedFinSet& cod, const FiniteRelation& x,
                             const FiniteRelation& y, std::uint64_t cap = default_enumeration_cap);

}  // namespace compcon
