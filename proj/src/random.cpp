#include "compcon/random.hpp"

#include <set>
#include <vector>

namespace compcon {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

LabelList numbered_labels(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return LabelList(std::move(out));
}

FiniteRelation random_relation(const LabelList& src, const LabelList& dst, Rng& rng, double p) {
    std::vector<FiniteRelation::Pair> pairs;
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = 0; j < dst.size(); ++j) {
            if (coin(rng, p)) pairs.emplace_back(i, j);
        }
    }
    return FiniteRelation(src, dst, pairs);
}

Rational random_rational(Rng& rng, double zero_p) {
    if (coin(rng, zero_p)) return Rational(0);
    std::int64_t num = 0;
    while (num == 0) num = static_cast<std::int64_t>(uniform_index(rng, 0, 6)) - 3;
    return Rational(num, static_cast<std::int64_t>(uniform_index(rng, 1, 3)));
}

SectorSpace random_sector_space(Rng& rng, const std::string& prefix, std::size_t max_sectors, std::size_t max_dim,
                                std::size_t min_sectors) {
    std::vector<Sector> sectors;
    const auto n = uniform_index(rng, min_sectors, max_sectors);
    for (std::size_t k = 0; k < n; ++k) sectors.push_back({prefix + std::to_string(k), uniform_index(rng, 1, max_dim)});
    return SectorSpace(std::move(sectors));
}

BlockMatrix random_block_matrix(const SectorSpace& dom, const SectorSpace& cod, Rng& rng, double zero_block_p) {
    Matrix m(cod.total_dim(), dom.total_dim());
    for (std::size_t l = 0; l < cod.size(); ++l) {
        for (std::size_t k = 0; k < dom.size(); ++k) {
            if (coin(rng, zero_block_p)) continue;
            for (std::size_t r = 0; r < cod.dim(l); ++r) {
                for (std::size_t c = 0; c < dom.dim(k); ++c) m(cod.offset(l) + r, dom.offset(k) + c) = random_rational(rng);
            }
        }
    }
    return BlockMatrix(dom, cod, std::move(m));
}

BlockMatrix random_block_matrix_within(const SectorSpace& dom, const SectorSpace& cod, const FiniteRelation& rel,
                                       Rng& rng) {
    Matrix m(cod.total_dim(), dom.total_dim());
    for (auto [k, l] : rel.pairs()) {
        for (std::size_t r = 0; r < cod.dim(l); ++r) {
            for (std::size_t c = 0; c < dom.dim(k); ++c) m(cod.offset(l) + r, dom.offset(k) + c) = random_rational(rng);
        }
    }
    return BlockMatrix(dom, cod, std::move(m));
}

FactorSpace random_factor_space(Rng& rng, const std::string& prefix, std::size_t min_factors, std::size_t max_factors,
                                std::size_t max_card) {
    std::vector<Factor> factors;
    const auto n = uniform_index(rng, min_factors, max_factors);
    for (std::size_t k = 0; k < n; ++k) factors.push_back({prefix + std::to_string(k), uniform_index(rng, 1, max_card)});
    return FactorSpace(std::move(factors));
}

Matrix random_stochastic_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<std::int64_t> weights(rows);
        std::int64_t total = 0;
        while (total == 0) {
            total = 0;
            for (auto& w : weights) {
                w = coin(rng, 0.3) ? 0 : static_cast<std::int64_t>(uniform_index(rng, 1, 3));
                total += w;
            }
        }
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = Rational(weights[r], total);
    }
    return m;
}

StochChannel random_channel_within(const FactorSpace& dom, const FactorSpace& cod, const FiniteRelation& rel,
                                   Rng& rng) {
    require_same_labels(dom.labels(), rel.src(), "channel domain");
    require_same_labels(cod.labels(), rel.dst(), "channel codomain");
    const auto back = converse(rel);
    std::vector<IndexSet> sources;
    std::vector<FactorSpace> subspaces;
    std::vector<Matrix> local;
    for (std::size_t j = 0; j < cod.size(); ++j) {
        sources.push_back(related_set(back, j));
        subspaces.push_back(dom.restrict_to(sources.back()));
        local.push_back(random_stochastic_matrix(cod.card(j), subspaces.back().total(), rng));
    }
    Matrix m(cod.total(), dom.total());
    for (std::size_t c = 0; c < dom.total(); ++c) {
        const auto in = dom.digits(c);
        for (std::size_t r = 0; r < cod.total(); ++r) {
            const auto out = cod.digits(r);
            Rational p(1);
            for (std::size_t j = 0; j < cod.size() && p != 0; ++j) {
                std::vector<std::size_t> key;
                for (auto i : sources[j]) key.push_back(in[i]);
                p *= local[j](out[j], subspaces[j].index(key));
            }
            m(r, c) = p;
        }
    }
    return StochChannel(dom, cod, std::move(m));
}

PartitionedFinSet random_partitioned_set(Rng& rng, const std::string& prefix, std::size_t min_blocks,
                                         std::size_t max_blocks, std::size_t max_size) {
    std::vector<Block> blocks;
    const auto n = uniform_index(rng, min_blocks, max_blocks);
    for (std::size_t k = 0; k < n; ++k) blocks.push_back({prefix + std::to_string(k), uniform_index(rng, 1, max_size)});
    return PartitionedFinSet(std::move(blocks));
}

std::optional<PartitionedFunction> random_function_within(const PartitionedFinSet& dom, const PartitionedFinSet& cod,
                                                          const FiniteRelation& rel, Rng& rng) {
    std::vector<std::size_t> map(dom.total());
    for (std::size_t x = 0; x < dom.total(); ++x) {
        std::vector<std::size_t> targets;
        for (std::size_t y = 0; y < cod.total(); ++y) {
            if (rel.contains(dom.block_of(x), cod.block_of(y))) targets.push_back(y);
        }
        if (targets.empty()) return std::nullopt;
        map[x] = targets[uniform_index(rng, 0, targets.size() - 1)];
    }
    return PartitionedFunction(dom, cod, std::move(map));
}

CSPProblem random_csp(std::size_t dom, std::size_t cod, std::size_t max_arity, std::size_t max_constraints, Rng& rng) {
    std::set<CSPConstraint> constraints;
    const auto n = uniform_index(rng, 0, max_constraints);
    for (std::size_t c = 0; c < n; ++c) {
        const auto k = uniform_index(rng, 1, max_arity);
        CSPConstraint con;
        for (std::size_t i = 0; i < k; ++i) con.scope.push_back(uniform_index(rng, 0, dom - 1));
        std::size_t tuples = 1;
        for (std::size_t i = 0; i < k; ++i) tuples *= cod;
        for (std::size_t t = 0; t < tuples; ++t) {
            if (!coin(rng)) continue;
            Tuple tuple(k);
            for (std::size_t i = k, rest = t; i-- > 0; rest /= cod) tuple[i] = rest % cod;
            con.allowed.insert(std::move(tuple));
        }
        constraints.insert(std::move(con));
    }
    return CSPProblem(dom, cod, std::move(constraints));
}

}  // namespace compcon
