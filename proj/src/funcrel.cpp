#include "compcon/funcrel.hpp"

#include <set>

#include "compcon/error.hpp"

namespace compcon {

PartitionedFinSet::PartitionedFinSet(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (blocks_[k].size == 0) throw InvalidValue("block '" + blocks_[k].label + "' is empty");
        offsets_.push_back(block_of_.size());
        block_of_.insert(block_of_.end(), blocks_[k].size, k);
        names.push_back(blocks_[k].label);
    }
    labels_ = LabelList(std::move(names));
}

PartitionedFinSet PartitionedFinSet::concat(const PartitionedFinSet& a, const PartitionedFinSet& b) {
    auto blocks = a.blocks_;
    blocks.insert(blocks.end(), b.blocks_.begin(), b.blocks_.end());
    return PartitionedFinSet(std::move(blocks));
}

PartitionedFunction::PartitionedFunction(PartitionedFinSet dom, PartitionedFinSet cod, std::vector<std::size_t> map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
    if (map_.size() != dom_.total()) {
        throw ShapeMismatch("function map has " + std::to_string(map_.size()) + " entries, domain has " +
                            std::to_string(dom_.total()) + " elements");
    }
    for (std::size_t x = 0; x < map_.size(); ++x) {
        if (map_[x] >= cod_.total()) {
            throw IndexOutOfRange("image of element " + std::to_string(x) + " is " + std::to_string(map_[x]) +
                                  ", codomain has " + std::to_string(cod_.total()) + " elements");
        }
    }
}

PartitionedFunction PartitionedFunction::identity(const PartitionedFinSet& set) {
    std::vector<std::size_t> map(set.total());
    for (std::size_t x = 0; x < map.size(); ++x) map[x] = x;
    return PartitionedFunction(set, set, std::move(map));
}

namespace {

void require_boundary(const PartitionedFinSet& dom, const PartitionedFinSet& cod, const FiniteRelation& rel) {
    require_same_labels(dom.labels(), rel.src(), "function constraint source");
    require_same_labels(cod.labels(), rel.dst(), "function constraint target");
}

// cod^dom, or nullopt once it passes cap.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base == 0) return 0;
        if (out > cap / base) return std::nullopt;
        out *= base;
    }
    return out;
}

}  // namespace

std::optional<std::string> find_funcrel_violation(const PartitionedFunction& f, const FiniteRelation& rel) {
    require_boundary(f.dom(), f.cod(), rel);
    for (std::size_t x = 0; x < f.dom().total(); ++x) {
        const std::size_t i = f.dom().block_of(x);
        const std::size_t j = f.cod().block_of(f(x));
        if (!rel.contains(i, j)) {
            return "element " + std::to_string(x) + " of block " + f.dom().blocks()[i].label + " maps into block " +
                   f.cod().blocks()[j].label;
        }
    }
    return std::nullopt;
}

bool check_funcrel(const PartitionedFunction& f, const FiniteRelation& rel) {
    return !find_funcrel_violation(f, rel).has_value();
}

PartitionedFunction compose(const PartitionedFunction& g, const PartitionedFunction& f) {
    if (!(f.cod() == g.dom())) {
        throw BoundaryMismatch("function compose: " + f.cod().labels().to_string() + " vs " +
                               g.dom().labels().to_string());
    }
    std::vector<std::size_t> map(f.dom().total());
    for (std::size_t x = 0; x < map.size(); ++x) map[x] = g(f(x));
    return PartitionedFunction(f.dom(), g.cod(), std::move(map));
}

PartitionedFunction tensor(const PartitionedFunction& f, const PartitionedFunction& g) {
    auto map = f.map();
    for (auto y : g.map()) map.push_back(y + f.cod().total());
    return PartitionedFunction(PartitionedFinSet::concat(f.dom(), g.dom()), PartitionedFinSet::concat(f.cod(), g.cod()),
                               std::move(map));
}

FiniteRelation image_relation(const PartitionedFunction& f) {
    std::vector<FiniteRelation::Pair> pairs;
    for (std::size_t x = 0; x < f.dom().total(); ++x) pairs.emplace_back(f.dom().block_of(x), f.cod().block_of(f(x)));
    return FiniteRelation(f.dom().labels(), f.cod().labels(), pairs);
}

ElementRestriction restrict_to_element(const PartitionedFunction& f, const FiniteRelation& rel, std::size_t x) {
    require_boundary(f.dom(), f.cod(), rel);
    if (x >= f.dom().total()) throw IndexOutOfRange("element " + std::to_string(x));
    const std::size_t i = f.dom().block_of(x);
    PartitionedFinSet single({Block{f.dom().blocks()[i].label, 1}});
    std::vector<FiniteRelation::Pair> row;
    for (auto j : related_set(rel, i)) row.emplace_back(0, j);
    FiniteRelation restricted(single.labels(), rel.dst(), row);
    return {PartitionedFunction(std::move(single), f.cod(), {f(x)}), std::move(restricted)};
}

std::vector<PartitionedFunction> enumerate_satisfying(const PartitionedFinSet& dom, const PartitionedFinSet& cod,
                                                      const FiniteRelation& rel, std::uint64_t cap) {
    require_boundary(dom, cod, rel);
    const auto count = bounded_power(cod.total(), dom.total(), cap);
    if (!count) {
        throw ExplosionError(std::to_string(cod.total()) + "^" + std::to_string(dom.total()) +
                             " candidate functions exceed the cap of " + std::to_string(cap));
    }
    std::vector<PartitionedFunction> out;
    std::vector<std::size_t> map(dom.total(), 0);
    for (std::uint64_t n = 0; n < *count; ++n) {
        if (n > 0) {
            // Odometer, last element fastest, so maps come out in lexicographic order.
            for (std::size_t x = map.size(); x-- > 0;) {
                if (++map[x] < cod.total()) break;
                map[x] = 0;
            }
        }
        PartitionedFunction f(dom, cod, map);
        if (check_funcrel(f, rel)) out.push_back(std::move(f));
    }
    return out;
}

bool oracle_laxity(const PartitionedFinSet& a, const PartitionedFinSet& b, const PartitionedFinSet& c,
                   const FiniteRelation& first, const FiniteRelation& second, std::uint64_t cap) {
    const auto fs = enumerate_satisfying(a, b, first, cap);
    const auto gs = enumerate_satisfying(b, c, second, cap);
    if (!fs.empty() && gs.size() > cap / fs.size()) {
        throw ExplosionError("laxity oracle would form " + std::to_string(fs.size()) + " x " +
                             std::to_string(gs.size()) + " composites, above the cap of " + std::to_string(cap));
    }
    std::set<std::vector<std::size_t>> allowed;
    for (const auto& h : enumerate_satisfying(a, c, compose(second, first), cap)) allowed.insert(h.map());
    for (const auto& f : fs) {
        for (const auto& g : gs) {
            if (!allowed.contains(compose(g, f).map())) return false;
        }
    }
    return true;
}

bool oracle_intersectability(const PartitionedFinSet& dom, const PartitionedFinSet& cod, const FiniteRelation& x,
                             const FiniteRelation& y, std::uint64_t cap) {
    auto as_set = [&](const FiniteRelation& rel) {
        std::set<std::vector<std::size_t>> out;
        for (const auto& f : enumerate_satisfying(dom, cod, rel, cap)) out.insert(f.map());
        return out;
    };
    const auto lx = as_set(x);
    const auto ly = as_set(y);
    std::set<std::vector<std::size_t>> both;
    for (const auto& m : lx) {
        if (ly.contains(m)) both.insert(m);
    }
    return both == as_set(meet(x, y));
}

}  // namespace compcon
