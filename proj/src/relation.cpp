#include "compcon/relation.hpp"

#include <algorithm>
#include <unordered_set>

#include "compcon/error.hpp"

namespace compcon {

namespace {

void require_distinct(const std::vector<std::string>& labels) {
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) {
            throw LabelCollision("duplicate label '" + label + "'");
        }
    }
}

}  // namespace

LabelList::LabelList(std::initializer_list<std::string> labels) : labels_(labels) {
    require_distinct(labels_);
}

LabelList::LabelList(std::vector<std::string> labels) : labels_(std::move(labels)) {
    require_distinct(labels_);
}

std::optional<std::size_t> LabelList::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::string LabelList::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (i) out += ',';
        out += labels_[i];
    }
    return out + "]";
}

LabelList LabelList::concat(const LabelList& left, const LabelList& right) {
    std::vector<std::string> joined = left.labels_;
    joined.insert(joined.end(), right.labels_.begin(), right.labels_.end());
    return LabelList(std::move(joined));
}

LabelList LabelList::product(const LabelList& left, const LabelList& right) {
    std::vector<std::string> out;
    out.reserve(left.size() * right.size());
    for (const auto& a : left.labels_) {
        for (const auto& b : right.labels_) out.push_back("(" + a + "," + b + ")");
    }
    return LabelList(std::move(out));
}

LabelList LabelList::product_unit() { return LabelList{"*"}; }

FiniteRelation::FiniteRelation(LabelList src, LabelList dst)
    : src_(std::move(src)), dst_(std::move(dst)), cells_(src_.size() * dst_.size(), 0) {}

FiniteRelation::FiniteRelation(LabelList src, LabelList dst, std::span<const Pair> pairs)
    : FiniteRelation(std::move(src), std::move(dst)) {
    for (auto [i, j] : pairs) {
        check_index(i, j);
        cells_[i * dst_.size() + j] = 1;
    }
}

FiniteRelation::FiniteRelation(LabelList src, LabelList dst, std::initializer_list<Pair> pairs)
    : FiniteRelation(std::move(src), std::move(dst), std::span<const Pair>(pairs.begin(), pairs.size())) {}

FiniteRelation FiniteRelation::identity(const LabelList& labels) {
    FiniteRelation rel(labels, labels);
    for (std::size_t i = 0; i < labels.size(); ++i) rel.cells_[i * labels.size() + i] = 1;
    return rel;
}

FiniteRelation FiniteRelation::full(const LabelList& src, const LabelList& dst) {
    FiniteRelation rel(src, dst);
    std::fill(rel.cells_.begin(), rel.cells_.end(), 1);
    return rel;
}

void FiniteRelation::check_index(std::size_t i, std::size_t j) const {
    if (i >= src_.size() || j >= dst_.size()) {
        throw IndexOutOfRange("pair (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside " + src_.to_string() + " -> " + dst_.to_string());
    }
}

bool FiniteRelation::contains(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return cells_[i * dst_.size() + j] != 0;
}

std::vector<FiniteRelation::Pair> FiniteRelation::pairs() const {
    std::vector<FiniteRelation::Pair> out;
    for (std::size_t i = 0; i < src_.size(); ++i) {
        for (std::size_t j = 0; j < dst_.size(); ++j) {
            if (cells_[i * dst_.size() + j]) out.emplace_back(i, j);
        }
    }
    return out;
}

std::size_t FiniteRelation::pair_count() const noexcept {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

FiniteRelation FiniteRelation::with(std::size_t i, std::size_t j) const {
    check_index(i, j);
    FiniteRelation out = *this;
    out.cells_[i * dst_.size() + j] = 1;
    return out;
}

FiniteRelation FiniteRelation::without(std::size_t i, std::size_t j) const {
    check_index(i, j);
    FiniteRelation out = *this;
    out.cells_[i * dst_.size() + j] = 0;
    return out;
}

void require_same_labels(const LabelList& expected, const LabelList& actual, const char* what) {
    if (!(expected == actual)) {
        throw BoundaryMismatch(std::string(what) + ": expected " + expected.to_string() + ", got " +
                               actual.to_string());
    }
}

FiniteRelation compose(const FiniteRelation& second, const FiniteRelation& first) {
    require_same_labels(first.dst(), second.src(), "compose");
    const std::size_t n = first.src().size();
    const std::size_t m = first.dst().size();
    const std::size_t k = second.dst().size();
    std::vector<FiniteRelation::Pair> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            for (std::size_t j = 0; j < m; ++j) {
                if (first.contains(i, j) && second.contains(j, l)) {
                    out.emplace_back(i, l);
                    break;
                }
            }
        }
    }
    return FiniteRelation(first.src(), second.dst(), out);
}

FiniteRelation converse(const FiniteRelation& rel) {
    std::vector<FiniteRelation::Pair> flipped;
    for (auto [i, j] : rel.pairs()) flipped.emplace_back(j, i);
    return FiniteRelation(rel.dst(), rel.src(), flipped);
}

FiniteRelation tensor_disjoint(const FiniteRelation& left, const FiniteRelation& right) {
    auto src = LabelList::concat(left.src(), right.src());
    auto dst = LabelList::concat(left.dst(), right.dst());
    std::vector<FiniteRelation::Pair> out = left.pairs();
    for (auto [i, j] : right.pairs()) out.emplace_back(i + left.src().size(), j + left.dst().size());
    return FiniteRelation(std::move(src), std::move(dst), out);
}

FiniteRelation tensor_product(const FiniteRelation& left, const FiniteRelation& right) {
    const std::size_t rs = right.src().size();
    const std::size_t rd = right.dst().size();
    std::vector<FiniteRelation::Pair> out;
    for (auto [i, j] : left.pairs()) {
        for (auto [i2, j2] : right.pairs()) out.emplace_back(i * rs + i2, j * rd + j2);
    }
    return FiniteRelation(LabelList::product(left.src(), right.src()),
                          LabelList::product(left.dst(), right.dst()), out);
}

namespace {

void require_parallel(const FiniteRelation& a, const FiniteRelation& b, const char* what) {
    require_same_labels(a.src(), b.src(), what);
    require_same_labels(a.dst(), b.dst(), what);
}

}  // namespace

FiniteRelation meet(const FiniteRelation& a, const FiniteRelation& b) {
    require_parallel(a, b, "meet");
    std::vector<FiniteRelation::Pair> out;
    for (auto p : a.pairs()) {
        if (b.contains(p.first, p.second)) out.push_back(p);
    }
    return FiniteRelation(a.src(), a.dst(), out);
}

bool leq(const FiniteRelation& a, const FiniteRelation& b) {
    require_parallel(a, b, "leq");
    for (auto [i, j] : a.pairs()) {
        if (!b.contains(i, j)) return false;
    }
    return true;
}

std::vector<FiniteRelation> meet_generators(const LabelList& src, const LabelList& dst) {
    const auto top = FiniteRelation::full(src, dst);
    std::vector<FiniteRelation> out;
    out.reserve(src.size() * dst.size());
    for (std::size_t a = 0; a < src.size(); ++a) {
        for (std::size_t b = 0; b < dst.size(); ++b) out.push_back(top.without(a, b));
    }
    return out;
}

IndexSet pre_image(const FiniteRelation& rel, const IndexSet& targets) {
    std::vector<std::uint8_t> in_targets(rel.dst().size(), 0);
    for (auto j : targets) {
        if (j >= rel.dst().size()) {
            throw IndexOutOfRange("pre_image target " + std::to_string(j) + " outside " + rel.dst().to_string());
        }
        in_targets[j] = 1;
    }
    IndexSet out;
    for (std::size_t i = 0; i < rel.src().size(); ++i) {
        bool inside = true;
        for (std::size_t j = 0; j < rel.dst().size() && inside; ++j) {
            if (rel.contains(i, j) && !in_targets[j]) inside = false;
        }
        if (inside) out.push_back(i);
    }
    return out;
}

IndexSet related_set(const FiniteRelation& rel, std::size_t i) {
    if (i >= rel.src().size()) {
        throw IndexOutOfRange("related_set index " + std::to_string(i) + " outside " + rel.src().to_string());
    }
    IndexSet out;
    for (std::size_t j = 0; j < rel.dst().size(); ++j) {
        if (rel.contains(i, j)) out.push_back(j);
    }
    return out;
}

FiniteRelation cup(const LabelList& labels) {
    const std::size_t n = labels.size();
    std::vector<FiniteRelation::Pair> out;
    for (std::size_t a = 0; a < n; ++a) out.emplace_back(0, a * n + a);
    return FiniteRelation(LabelList::product_unit(), LabelList::product(labels, labels), out);
}

FiniteRelation cap(const LabelList& labels) { return converse(cup(labels)); }

FiniteRelation relabel(const FiniteRelation& rel, LabelList src, LabelList dst) {
    if (src.size() != rel.src().size() || dst.size() != rel.dst().size()) {
        throw BoundaryMismatch("relabel: sizes " + std::to_string(src.size()) + "x" + std::to_string(dst.size()) +
                               " do not match " + std::to_string(rel.src().size()) + "x" +
                               std::to_string(rel.dst().size()));
    }
    auto pairs = rel.pairs();
    return FiniteRelation(std::move(src), std::move(dst), pairs);
}

}  // namespace compcon
