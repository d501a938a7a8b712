#include "compcon/harness.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "compcon/constrained.hpp"
#include "compcon/encodings.hpp"
#include "compcon/error.hpp"
#include "compcon/monoidrel.hpp"
#include "compcon/sectorial.hpp"
#include "compcon/signalling.hpp"

namespace compcon {

void SuiteReport::merge(const SuiteReport& other) {
    cases += other.cases;
    violations += other.violations;
    if (!first_failure && other.first_failure) first_failure = other.first_failure;
    expected.insert(expected.end(), other.expected.begin(), other.expected.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

namespace {

std::string pairs_text(const FiniteRelation& rel) {
    std::ostringstream out;
    out << rel.src().to_string() << "->" << rel.dst().to_string() << " {";
    bool first = true;
    for (auto [i, j] : rel.pairs()) {
        out << (first ? "" : ",") << "(" << rel.src()[i] << "," << rel.dst()[j] << ")";
        first = false;
    }
    out << "}";
    return out.str();
}

// Every relation between src and dst, indexed by its cell mask (row-major).
std::vector<FiniteRelation> all_relations(const LabelList& src, const LabelList& dst) {
    const std::size_t cells = src.size() * dst.size();
    std::vector<FiniteRelation> out;
    out.reserve(std::size_t{1} << cells);
    std::vector<FiniteRelation::Pair> pairs;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        pairs.clear();
        for (std::size_t c = 0; c < cells; ++c) {
            if (mask >> c & 1) pairs.emplace_back(c / dst.size(), c % dst.size());
        }
        out.emplace_back(src, dst, pairs);
    }
    return out;
}

std::uint64_t relation_mask(const FiniteRelation& rel) {
    std::uint64_t mask = 0;
    for (auto [i, j] : rel.pairs()) mask |= std::uint64_t{1} << (i * rel.dst().size() + j);
    return mask;
}

IndexSet subset_of(std::uint64_t mask, std::size_t n) {
    IndexSet out;
    for (std::size_t k = 0; k < n; ++k) {
        if (mask >> k & 1) out.push_back(k);
    }
    return out;
}

// Partitioned sets with 0..max_blocks blocks of sizes 1..max_size.
std::vector<PartitionedFinSet> all_shapes(const std::string& prefix, std::size_t max_blocks, std::size_t max_size) {
    std::vector<PartitionedFinSet> out;
    for (std::size_t n = 0; n <= max_blocks; ++n) {
        std::vector<std::size_t> sizes(n, 1);
        while (true) {
            std::vector<Block> blocks;
            for (std::size_t k = 0; k < n; ++k) blocks.push_back({prefix + std::to_string(k), sizes[k]});
            out.emplace_back(std::move(blocks));
            std::size_t k = 0;
            while (k < n && sizes[k] == max_size) sizes[k++] = 1;
            if (k == n) break;
            ++sizes[k];
        }
    }
    return out;
}

std::uint64_t count_satisfying(const PartitionedFinSet& dom, const PartitionedFinSet& cod, const FiniteRelation& rel) {
    std::uint64_t count = 1;
    for (std::size_t x = 0; x < dom.total(); ++x) {
        std::uint64_t choices = 0;
        for (std::size_t k = 0; k < cod.size(); ++k) {
            if (rel.contains(dom.block_of(x), k)) choices += cod.blocks()[k].size;
        }
        count *= choices;
    }
    return count;
}

}  // namespace

SuiteReport counterexample_suite() {
    SuiteReport r("counterexample");
    const auto f = parity_counterexample();
    const LabelList a{"A"};
    const LabelList b{"B1", "B2"};
    const FiniteRelation sigma1(a, b, {{0, 1}});
    const FiniteRelation sigma2(a, b, {{0, 0}});
    const auto both = meet(sigma1, sigma2);
    auto expect = [&](bool ok, const std::string& what) {
        ++r.cases;
        if (!ok) r.fail(what);
    };
    expect(check_signalling(f, sigma1), "parity channel fails sigma1");
    expect(check_signalling(f, sigma2), "parity channel fails sigma2");
    const auto witness = find_signalling_violation(f, both);
    expect(witness.has_value(), "parity channel satisfies the meet");
    expect(check_signalling_atomic(f, both), "parity channel fails the atomic check on the meet");
    expect(!check_cosignalling(f, both), "parity channel passes the cosignalling check on the meet");
    if (witness) r.expected.push_back("parity channel satisfies sigma1 and sigma2 but not their meet: " + *witness);
    return r;
}

SuiteReport sectorial_intersectability(std::size_t trials, std::uint64_t seed) {
    SuiteReport r("sectorial-intersectability");
    Rng rng(seed);
    std::uint64_t both_hold = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto dom = random_sector_space(rng, "k", 3, 2);
        const auto cod = random_sector_space(rng, "l", 3, 2);
        const auto f = random_block_matrix(dom, cod, rng);
        // Relations drawn around the support so that both outcomes occur.
        const auto support = support_relation(f);
        auto draw = [&] {
            auto rel = random_relation(dom.labels(), cod.labels(), rng);
            if (coin(rng)) {
                for (auto [i, j] : support.pairs()) {
                    if (coin(rng, 0.85)) rel = rel.with(i, j);
                }
            }
            return rel;
        };
        const auto tau = draw();
        const auto sigma = draw();
        const bool lhs = check_sectorial(f, meet(tau, sigma));
        const bool rhs = check_sectorial(f, tau) && check_sectorial(f, sigma);
        both_hold += rhs;
        ++r.cases;
        if (lhs != rhs) r.fail("f satisfies " + pairs_text(tau) + " and " + pairs_text(sigma) + " but not their meet");
    }
    r.notes.push_back(std::to_string(both_hold) + " instances satisfied both relations");
    return r;
}

SuiteReport sectorial_laxity(std::size_t trials, std::uint64_t seed) {
    SuiteReport r("sectorial-laxity");
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto a = random_sector_space(rng, "a", 3, 2);
        const auto b = random_sector_space(rng, "b", 3, 2);
        const auto c = random_sector_space(rng, "c", 3, 2);
        const auto f = random_block_matrix(a, b, rng);
        const auto g = random_block_matrix(b, c, rng);
        const auto gf = compose(g, f);
        const auto bound = compose(support_relation(g), support_relation(f));
        ++r.cases;
        if (!leq(support_relation(gf), bound)) {
            r.fail("support of g.f " + pairs_text(support_relation(gf)) + " exceeds " + pairs_text(bound));
        }
        // Any relations the factors satisfy, not only their supports.
        auto tau = support_relation(f);
        auto sigma = support_relation(g);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (coin(rng, 0.2)) tau = tau.with(i, j);
            }
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (coin(rng, 0.2)) sigma = sigma.with(i, j);
            }
        }
        ++r.cases;
        if (auto w = find_sectorial_violation(gf, compose(sigma, tau))) r.fail("g.f fails the composed relation: " + *w);
    }
    return r;
}

SuiteReport funcrel_laxity_exhaustive(std::size_t max_blocks, std::size_t max_size, std::uint64_t literal_cap) {
    SuiteReport r("funcrel-laxity");
    if (max_blocks > 4) throw ExplosionError("funcrel laxity sweep is limited to 4 blocks per set");
    std::vector<std::vector<PartitionedFinSet>> shapes_a(max_blocks + 1), shapes_b(max_blocks + 1),
        shapes_c(max_blocks + 1);
    for (auto& s : all_shapes("a", max_blocks, max_size)) shapes_a[s.size()].push_back(std::move(s));
    for (auto& s : all_shapes("b", max_blocks, max_size)) shapes_b[s.size()].push_back(std::move(s));
    for (auto& s : all_shapes("c", max_blocks, max_size)) shapes_c[s.size()].push_back(std::move(s));

    // Block rows as bit masks; element e of a shape lies in block blocks[e].
    auto rows_of = [](const FiniteRelation& rel) {
        std::vector<std::uint32_t> rows(rel.src().size());
        for (auto [i, j] : rel.pairs()) rows[i] |= 1u << j;
        return rows;
    };
    auto block_list = [](const PartitionedFinSet& s) {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < s.total(); ++e) out.push_back(s.block_of(e));
        return out;
    };

    std::uint64_t pointwise = 0, literal = 0, composites = 0;
    for (std::size_t na = 0; na <= max_blocks; ++na) {
        for (std::size_t nb = 0; nb <= max_blocks; ++nb) {
            const auto taus = all_relations(numbered_labels("a", na), numbered_labels("b", nb));
            for (std::size_t nc = 0; nc <= max_blocks; ++nc) {
                const auto sigmas = all_relations(numbered_labels("b", nb), numbered_labels("c", nc));
                std::vector<std::vector<std::size_t>> elems_a, elems_b;
                for (const auto& s : shapes_a[na]) elems_a.push_back(block_list(s));
                for (const auto& s : shapes_b[nb]) elems_b.push_back(block_list(s));
                // Blocks of C holding at least one element, per shape.
                std::vector<std::uint32_t> occupied_c;
                for (const auto& s : shapes_c[nc]) {
                    std::uint32_t mask = 0;
                    for (auto k : block_list(s)) mask |= 1u << k;
                    occupied_c.push_back(mask);
                }
                for (const auto& tau : taus) {
                    const auto tau_rows = rows_of(tau);
                    // L(tau) is empty iff some block of A relates to nothing.
                    bool tau_total = true;
                    for (auto row : tau_rows) tau_total = tau_total && row != 0;
                    for (const auto& sigma : sigmas) {
                        const auto sigma_rows = rows_of(sigma);
                        bool sigma_total = true;
                        for (auto row : sigma_rows) sigma_total = sigma_total && row != 0;
                        const auto composed = compose(sigma, tau);
                        const auto comp_rows = rows_of(composed);
                        for (std::size_t sa = 0; sa < shapes_a[na].size(); ++sa) {
                            for (std::size_t sb = 0; sb < shapes_b[nb].size(); ++sb) {
                                for (auto reached_c : occupied_c) {
                                    // Element by element: every value a satisfying f may
                                    // give x, then every element a satisfying g may send
                                    // that value to, stays inside the composed row of x.
                                    bool ok = true;
                                    if (tau_total && sigma_total) {
                                        for (auto i : elems_a[sa]) {
                                            for (auto j : elems_b[sb]) {
                                                if ((tau_rows[i] >> j & 1) &&
                                                    (sigma_rows[j] & reached_c & ~comp_rows[i]) != 0) {
                                                    ok = false;
                                                }
                                            }
                                        }
                                    }
                                    ++pointwise;
                                    ++r.cases;
                                    if (!ok) {
                                        r.fail("composite leaves " + pairs_text(composed) + " for " +
                                               pairs_text(tau) + " then " + pairs_text(sigma));
                                    }
                                }
                            }
                        }
                        // Literal check on unit-size blocks: form every composite.
                        const auto& A = shapes_a[na].front();
                        const auto& B = shapes_b[nb].front();
                        const auto& C = shapes_c[nc].front();
                        const auto n = count_satisfying(A, B, tau) * count_satisfying(B, C, sigma);
                        if (n <= literal_cap) {
                            ++literal;
                            composites += n;
                            if (!oracle_laxity(A, B, C, tau, sigma, literal_cap)) {
                                r.fail("a composite of unit-block functions leaves " + pairs_text(composed));
                            }
                        }
                    }
                }
            }
        }
    }
    r.notes.push_back(std::to_string(pointwise) + " instances decided element by element");
    r.notes.push_back(std::to_string(literal) + " unit-block instances also decided by forming all " +
                      std::to_string(composites) + " composites");
    return r;
}

SuiteReport funcrel_intersectability_exhaustive(std::size_t max_blocks, std::size_t max_size, std::uint64_t cap) {
    SuiteReport r("funcrel-intersectability");
    const auto shapes_a = all_shapes("a", max_blocks, max_size);
    const auto shapes_b = all_shapes("b", max_blocks, max_size);
    std::uint64_t skipped = 0;
    for (const auto& A : shapes_a) {
        for (const auto& B : shapes_b) {
            const auto rels = all_relations(A.labels(), B.labels());
            for (const auto& x : rels) {
                for (const auto& y : rels) {
                    if (count_satisfying(A, B, x) > cap || count_satisfying(A, B, y) > cap) {
                        ++skipped;
                        continue;
                    }
                    ++r.cases;
                    if (!oracle_intersectability(A, B, x, y, cap)) {
                        r.fail("L(meet) differs from the intersection for " + pairs_text(x) + " and " + pairs_text(y));
                    }
                }
            }
        }
    }
    if (skipped != 0) r.notes.push_back(std::to_string(skipped) + " instances above the cap were not enumerated");
    return r;
}

SuiteReport signalling_intersectability(std::size_t trials, std::uint64_t seed, bool with_counterexample) {
    SuiteReport r("signalling-intersectability");
    Rng rng(seed);
    std::uint64_t gaps = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto dom = random_factor_space(rng, "i", 1, 3, 2);
        const auto cod = random_factor_space(rng, "o", 1, 3, 2);
        const auto f = random_channel_within(dom, cod, random_relation(dom.labels(), cod.labels(), rng, 0.6), rng);
        const auto tau = random_relation(dom.labels(), cod.labels(), rng, 0.7);
        const auto sigma = random_relation(dom.labels(), cod.labels(), rng, 0.7);
        const bool on_meet = check_signalling(f, meet(tau, sigma));
        const bool on_both = check_signalling(f, tau) && check_signalling(f, sigma);
        ++r.cases;
        // Satisfying the meet implies both; the converse may fail.
        if (on_meet && !on_both) r.fail("channel satisfies a meet but not one of its arguments");
        gaps += on_both && !on_meet;
    }
    r.notes.push_back(std::to_string(gaps) + " random instances satisfy both relations but not their meet");
    if (with_counterexample) {
        auto cx = counterexample_suite();
        cx.suite = r.suite;
        if (cx.expected.empty()) cx.fail("the parity counterexample was not reproduced");
        r.merge(cx);
    }
    return r;
}

SuiteReport signalling_laxity(std::size_t trials, std::uint64_t seed) {
    SuiteReport r("signalling-laxity");
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto a = random_factor_space(rng, "a", 1, 3, 2);
        const auto b = random_factor_space(rng, "b", 1, 3, 2);
        const auto c = random_factor_space(rng, "c", 1, 3, 2);
        const auto tau = random_relation(a.labels(), b.labels(), rng);
        const auto sigma = random_relation(b.labels(), c.labels(), rng);
        const auto f = random_channel_within(a, b, tau, rng);
        const auto g = random_channel_within(b, c, sigma, rng);
        ++r.cases;
        if (auto w = find_signalling_violation(compose(g, f), compose(sigma, tau))) {
            r.fail("g.f fails " + pairs_text(compose(sigma, tau)) + ": " + *w);
        }
    }
    return r;
}

SuiteReport meet_generator_completeness(std::size_t max_labels) {
    SuiteReport r("meet-generators");
    for (std::size_t n = 0; n <= max_labels; ++n) {
        for (std::size_t m = 0; m <= max_labels; ++m) {
            const auto src = numbered_labels("a", n);
            const auto dst = numbered_labels("b", m);
            const auto gens = meet_generators(src, dst);
            if (gens.size() != n * m) r.fail("wrong number of generators for " + std::to_string(n) + "x" +
                                             std::to_string(m));
            for (const auto& tau : all_relations(src, dst)) {
                auto acc = FiniteRelation::full(src, dst);
                for (const auto& g : gens) {
                    if (leq(tau, g)) acc = meet(acc, g);
                }
                ++r.cases;
                if (acc != tau) r.fail("meet of the generators above " + pairs_text(tau) + " is " + pairs_text(acc));
            }
        }
    }
    return r;
}

namespace {

// A channel word built from constrained generators, carried as a certified pair.
class ChannelWords {
public:
    using Cat = ConstrainedCategory<SignallingEncoding>;
    using Pair = Cat::Pair;

    explicit ChannelWords(Rng& rng) : rng_(rng) {}

    const Cat& category() const { return cat_; }

    FactorSpace fresh_space(std::size_t min_factors, std::size_t max_factors) {
        std::vector<Factor> factors;
        const auto n = uniform_index(rng_, min_factors, max_factors);
        for (std::size_t k = 0; k < n; ++k) factors.push_back(fresh_factor());
        return FactorSpace(std::move(factors));
    }

    Factor fresh_factor() { return {"w" + std::to_string(counter_++), uniform_index(rng_, 1, 2)}; }

    Pair permute_factors_step(const FactorSpace& s) {
        std::vector<std::size_t> order(s.size());
        for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
        std::shuffle(order.begin(), order.end(), rng_);
        const auto f = permute_factors(s, order);
        std::vector<FiniteRelation::Pair> pairs;
        for (std::size_t p = 0; p < order.size(); ++p) pairs.emplace_back(order[p], p);
        return cat_.pair(FiniteRelation(s.labels(), f.cod().labels(), pairs), f);
    }

    Pair permute_values_step(const FactorSpace& s) {
        const auto k = uniform_index(rng_, 0, s.size() - 1);
        std::vector<std::size_t> perm(s.card(k));
        for (std::size_t v = 0; v < perm.size(); ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng_);
        return cat_.pair(FiniteRelation::identity(s.labels()), permute_values(s, k, perm));
    }

    Pair discard_step(const FactorSpace& s) {
        const auto k = uniform_index(rng_, 0, s.size() - 1);
        const auto f = discard(s, {k});
        std::vector<FiniteRelation::Pair> pairs;
        for (std::size_t i = 0, p = 0; i < s.size(); ++i) {
            if (i != k) pairs.emplace_back(i, p++);
        }
        return cat_.pair(FiniteRelation(s.labels(), f.cod().labels(), pairs), f);
    }

    Pair prepare_step(const FactorSpace& s) {
        const auto pos = uniform_index(rng_, 0, s.size());
        auto factors = s.factors();
        factors.insert(factors.begin() + static_cast<std::ptrdiff_t>(pos), fresh_factor());
        const FactorSpace target(factors);
        const auto f = prepare_uniform(target, {pos});
        std::vector<FiniteRelation::Pair> pairs;
        for (std::size_t i = 0; i < s.size(); ++i) pairs.emplace_back(i, i < pos ? i : i + 1);
        return cat_.pair(FiniteRelation(s.labels(), target.labels(), pairs), f);
    }

    // A random channel acting on the factors in `touched`, replacing them by
    // fresh factors (or the same factors when in_place), identity elsewhere.
    Pair local_step(const FactorSpace& s, bool in_place) {
        IndexSet touched;
        while (touched.empty()) {
            for (std::size_t k = 0; k < s.size(); ++k) {
                if (coin(rng_, 0.5)) touched.push_back(k);
            }
        }
        std::vector<Factor> outputs;
        if (in_place) {
            for (auto k : touched) outputs.push_back(s.factors()[k]);
        } else {
            const std::size_t room = 3 - (s.size() - touched.size());
            const auto n_new = uniform_index(rng_, 0, std::min<std::size_t>(2, room));
            for (std::size_t q = 0; q < n_new; ++q) outputs.push_back(fresh_factor());
        }
        std::size_t in_total = 1, out_total = 1;
        for (auto k : touched) in_total *= s.card(k);
        for (const auto& o : outputs) out_total *= o.card;
        return embed(s, touched, outputs, random_stochastic_matrix(out_total, in_total, rng_));
    }

    // Parity expansion of a bit into two fresh bits.
    std::optional<Pair> parity_step(const FactorSpace& s) {
        if (s.size() >= 3) return std::nullopt;
        IndexSet bits;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s.card(k) == 2) bits.push_back(k);
        }
        if (bits.empty()) return std::nullopt;
        const auto k = bits[uniform_index(rng_, 0, bits.size() - 1)];
        return embed(s, {k}, {fresh_bit(), fresh_bit()}, parity_counterexample().matrix());
    }

    Pair relax_step(const Pair& p) {
        auto rel = p.constraint();
        for (std::size_t i = 0; i < rel.src().size(); ++i) {
            for (std::size_t j = 0; j < rel.dst().size(); ++j) {
                if (coin(rng_, 0.15)) rel = rel.with(i, j);
            }
        }
        return cat_.relax(p, rel);
    }

    // A word of up to max_steps generators starting at a fresh space.
    Pair channel_word(std::size_t max_steps, bool allow_tensor) {
        if (allow_tensor && coin(rng_, 0.25)) {
            auto left = channel_word(max_steps / 2 + 1, false);
            auto right = channel_word(max_steps / 2 + 1, false);
            if (left.morphism().dom().size() + right.morphism().dom().size() <= 3 &&
                left.morphism().cod().size() + right.morphism().cod().size() <= 3) {
                return cat_.tensor(left, right);
            }
            return left;
        }
        auto word = cat_.identity(fresh_space(1, 3));
        const auto steps = uniform_index(rng_, 1, max_steps);
        for (std::size_t t = 0; t < steps; ++t) {
            const auto s = word.morphism().cod();
            std::optional<Pair> step;
            switch (uniform_index(rng_, 0, 6)) {
                case 0:
                    if (!s.factors().empty()) step = local_step(s, true);
                    break;
                case 1:
                    if (!s.factors().empty()) step = local_step(s, false);
                    break;
                case 2:
                    step = permute_factors_step(s);
                    break;
                case 3:
                    if (!s.factors().empty()) step = discard_step(s);
                    break;
                case 4:
                    if (s.size() < 3) step = prepare_step(s);
                    break;
                case 5:
                    step = parity_step(s);
                    break;
                default:
                    word = relax_step(word);
                    break;
            }
            if (step) word = cat_.compose(*step, word);
        }
        return word;
    }

    // Words of permutations, discards and uniform preparations only.
    Pair reversible_word(std::size_t max_steps) {
        auto word = cat_.identity(fresh_space(1, 3));
        const auto steps = uniform_index(rng_, 1, max_steps);
        for (std::size_t t = 0; t < steps; ++t) {
            const auto s = word.morphism().cod();
            std::optional<Pair> step;
            switch (uniform_index(rng_, 0, 3)) {
                case 0:
                    step = permute_factors_step(s);
                    break;
                case 1:
                    if (!s.factors().empty()) step = permute_values_step(s);
                    break;
                case 2:
                    if (!s.factors().empty()) step = discard_step(s);
                    break;
                default:
                    if (s.size() < 3) step = prepare_step(s);
                    break;
            }
            if (step) word = cat_.compose(*step, word);
        }
        return word;
    }

private:
    Factor fresh_bit() { return {"w" + std::to_string(counter_++), 2}; }

    // local (outputs x touched) acts on the touched inputs and produces
    // `outputs`, appended after the untouched factors, which pass through.
    Pair embed(const FactorSpace& s, const IndexSet& touched, const std::vector<Factor>& outputs, const Matrix& local) {
        std::vector<Factor> out_factors;
        std::vector<std::size_t> wire(s.size(), s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (std::find(touched.begin(), touched.end(), k) != touched.end()) continue;
            wire[k] = out_factors.size();
            out_factors.push_back(s.factors()[k]);
        }
        IndexSet new_positions;
        for (const auto& o : outputs) {
            new_positions.push_back(out_factors.size());
            out_factors.push_back(o);
        }
        const FactorSpace cod(out_factors);
        const auto in_sub = s.restrict_to(touched);
        const auto out_sub = cod.restrict_to(new_positions);
        Matrix m(cod.total(), s.total());
        for (std::size_t c = 0; c < s.total(); ++c) {
            const auto in = s.digits(c);
            std::vector<std::size_t> in_key;
            for (auto k : touched) in_key.push_back(in[k]);
            for (std::size_t row = 0; row < cod.total(); ++row) {
                const auto out = cod.digits(row);
                bool wires_agree = true;
                for (std::size_t k = 0; k < s.size(); ++k) {
                    if (wire[k] != s.size() && out[wire[k]] != in[k]) wires_agree = false;
                }
                if (!wires_agree) continue;
                std::vector<std::size_t> out_key;
                for (auto p : new_positions) out_key.push_back(out[p]);
                m(row, c) = local(out_sub.index(out_key), in_sub.index(in_key));
            }
        }
        std::vector<FiniteRelation::Pair> pairs;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (wire[k] != s.size()) pairs.emplace_back(k, wire[k]);
        }
        for (auto k : touched) {
            for (auto p : new_positions) pairs.emplace_back(k, p);
        }
        return cat_.pair(FiniteRelation(s.labels(), cod.labels(), pairs), StochChannel(s, cod, std::move(m)));
    }

    Rng& rng_;
    Cat cat_{SignallingEncoding{}, true};
    std::size_t counter_ = 0;
};

}  // namespace

SuiteReport domain_atomicity(std::size_t channels, std::uint64_t seed) {
    SuiteReport r("domain-atomicity");
    Rng rng(seed);
    ChannelWords words(rng);
    std::uint64_t subsets = 0;
    for (std::size_t n = 0; n < channels; ++n) {
        try {
            const auto word = words.channel_word(5, true);
            const auto& f = word.morphism();
            const auto& tau = word.constraint();
            const std::size_t outs = f.cod().size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << outs); ++mask) {
                ++r.cases;
                ++subsets;
                if (!check_domain_atomicity(f, tau, subset_of(mask, outs))) {
                    r.fail("discarding outputs " + std::to_string(mask) + " of a channel constrained by " +
                           pairs_text(tau) + " does not factor through the joint pre-image");
                }
            }
        } catch (const LaxityViolation& e) {
            ++r.cases;
            r.fail(e.what());
        }
    }
    r.notes.push_back(std::to_string(channels) + " channels, " + std::to_string(subsets) + " output subsets");
    return r;
}

SuiteReport timesym_agreement(std::size_t words_count, std::uint64_t seed) {
    SuiteReport r("timesym-agreement");
    Rng rng(seed);
    ChannelWords words(rng);
    std::uint64_t relations = 0;
    std::uint64_t positive = 0;
    for (std::size_t n = 0; n < words_count; ++n) {
        ChannelWords::Pair word = words.category().identity(FactorSpace());
        try {
            word = words.reversible_word(6);
        } catch (const LaxityViolation& e) {
            ++r.cases;
            r.fail(e.what());
            continue;
        }
        const auto& f = word.morphism();
        const auto& derived = word.constraint();
        auto agree = [&](const FiniteRelation& rel) {
            const bool full = check_signalling(f, rel);
            const bool back = check_cosignalling(f, rel);
            const bool atomic = check_signalling_atomic(f, rel);
            ++r.cases;
            ++relations;
            positive += full;
            if (full != back || full != atomic) {
                r.fail("checks disagree on " + pairs_text(rel) + ": signalling " + std::to_string(full) +
                       ", cosignalling " + std::to_string(back) + ", atomic " + std::to_string(atomic));
            }
        };
        agree(derived);
        if (!check_signalling(f, derived)) r.fail("a word fails its own derived relation " + pairs_text(derived));
        for (std::size_t i = 0; i < derived.src().size(); ++i) {
            for (std::size_t j = 0; j < derived.dst().size(); ++j) {
                agree(derived.contains(i, j) ? derived.without(i, j) : derived.with(i, j));
            }
        }
    }
    r.notes.push_back(std::to_string(relations) + " relations checked, " + std::to_string(positive) + " satisfied");
    return r;
}

namespace {

// Every constraint of the given arity over dom/cod sizes.
std::vector<CSPConstraint> all_constraints(std::size_t dom, std::size_t cod, std::size_t arity) {
    std::vector<Tuple> scopes(1), values(1);
    for (std::size_t k = 0; k < arity; ++k) {
        std::vector<Tuple> ns, nv;
        for (const auto& s : scopes) {
            for (std::size_t v = 0; v < dom; ++v) {
                ns.push_back(s);
                ns.back().push_back(v);
            }
        }
        for (const auto& s : values) {
            for (std::size_t v = 0; v < cod; ++v) {
                nv.push_back(s);
                nv.back().push_back(v);
            }
        }
        scopes = std::move(ns);
        values = std::move(nv);
    }
    std::vector<CSPConstraint> out;
    for (const auto& scope : scopes) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << values.size()); ++mask) {
            CSPConstraint c{scope, {}};
            for (std::size_t t = 0; t < values.size(); ++t) {
                if (mask >> t & 1) c.allowed.insert(values[t]);
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<CSPProblem> all_problems(std::size_t dom, std::size_t cod, const std::vector<std::size_t>& arities,
                                     std::size_t max_constraints) {
    std::vector<CSPConstraint> singles;
    for (auto k : arities) {
        auto more = all_constraints(dom, cod, k);
        singles.insert(singles.end(), more.begin(), more.end());
    }
    std::vector<CSPProblem> out;
    out.emplace_back(dom, cod, std::set<CSPConstraint>{});
    if (max_constraints >= 1) {
        for (const auto& c : singles) out.emplace_back(dom, cod, std::set<CSPConstraint>{c});
    }
    if (max_constraints >= 2) {
        for (std::size_t i = 0; i < singles.size(); ++i) {
            for (std::size_t j = i + 1; j < singles.size(); ++j) {
                out.emplace_back(dom, cod, std::set<CSPConstraint>{singles[i], singles[j]});
            }
        }
    }
    if (max_constraints > 2) throw ExplosionError("at most two constraints per problem are enumerated");
    return out;
}

std::vector<std::vector<std::size_t>> all_maps(std::size_t dom, std::size_t cod) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> f(dom, 0);
    if (cod == 0 && dom > 0) return out;
    while (true) {
        out.push_back(f);
        std::size_t k = 0;
        while (k < dom && f[k] == cod - 1) f[k++] = 0;
        if (k == dom) break;
        ++f[k];
    }
    return out;
}

std::string csp_text(const CSPProblem& p) {
    std::ostringstream out;
    out << p.dom_size() << "->" << p.cod_size() << " {";
    bool first = true;
    for (const auto& c : p.constraints()) {
        out << (first ? "" : "; ") << "(";
        for (std::size_t i = 0; i < c.scope.size(); ++i) out << (i ? "," : "") << c.scope[i];
        out << ") in {";
        bool ft = true;
        for (const auto& t : c.allowed) {
            out << (ft ? "" : " ");
            for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
            ft = false;
        }
        out << "}";
        first = false;
    }
    out << "}";
    return out.str();
}

// Exhaustive sweep over problem pairs; satisfying maps of each problem are
// listed once and composites are checked per distinct composed map.
void csp_sweep(SuiteReport& r, std::size_t max_size, const std::vector<std::size_t>& arities, std::size_t first_max,
               std::size_t second_max, std::uint64_t& compositions) {
    for (std::size_t a = 1; a <= max_size; ++a) {
        for (std::size_t b = 1; b <= max_size; ++b) {
            const auto firsts = all_problems(a, b, arities, first_max);
            const auto fs = all_maps(a, b);
            std::vector<std::vector<std::size_t>> sat_f(firsts.size());
            for (std::size_t p = 0; p < firsts.size(); ++p) {
                for (std::size_t i = 0; i < fs.size(); ++i) {
                    if (satisfies(fs[i], firsts[p])) sat_f[p].push_back(i);
                }
            }
            for (std::size_t c = 1; c <= max_size; ++c) {
                const auto seconds = all_problems(b, c, arities, second_max);
                const auto gs = all_maps(b, c);
                const auto hs = all_maps(a, c);
                std::map<std::vector<std::size_t>, std::size_t> h_index;
                for (std::size_t i = 0; i < hs.size(); ++i) h_index[hs[i]] = i;
                std::vector<std::size_t> comp(gs.size() * fs.size());
                for (std::size_t g = 0; g < gs.size(); ++g) {
                    for (std::size_t f = 0; f < fs.size(); ++f) comp[g * fs.size() + f] = h_index.at(compose_maps(gs[g], fs[f]));
                }
                std::vector<std::vector<std::size_t>> sat_g(seconds.size());
                for (std::size_t p = 0; p < seconds.size(); ++p) {
                    for (std::size_t i = 0; i < gs.size(); ++i) {
                        if (satisfies(gs[i], seconds[p])) sat_g[p].push_back(i);
                    }
                }
                std::vector<char> reached(hs.size());
                for (std::size_t p = 0; p < firsts.size(); ++p) {
                    if (sat_f[p].empty()) {
                        r.cases += seconds.size();
                        continue;
                    }
                    for (std::size_t q = 0; q < seconds.size(); ++q) {
                        ++r.cases;
                        if (sat_g[q].empty()) continue;
                        const auto composed = compose_csp(seconds[q], firsts[p]);
                        ++compositions;
                        if (composed.constraints().empty()) continue;
                        std::fill(reached.begin(), reached.end(), 0);
                        for (auto g : sat_g[q]) {
                            for (auto f : sat_f[p]) reached[comp[g * fs.size() + f]] = 1;
                        }
                        for (std::size_t h = 0; h < hs.size(); ++h) {
                            if (reached[h] && !satisfies(hs[h], composed)) {
                                r.fail("a composed solution fails " + csp_text(composed) + " built from " +
                                       csp_text(firsts[p]) + " and " + csp_text(seconds[q]));
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
}

Tuple image(const std::vector<std::size_t>& f, const Tuple& t) {
    Tuple out;
    for (auto v : t) out.push_back(f[v]);
    return out;
}

Tuple random_tuple(std::size_t arity, std::size_t n, Rng& rng) {
    Tuple t(arity);
    for (auto& v : t) v = uniform_index(rng, 0, n - 1);
    return t;
}

}  // namespace

SuiteReport csp_laxity(const CSPSweepOptions& o) {
    SuiteReport r("csp-laxity");
    std::uint64_t compositions = 0;
    const auto before_a = r.cases;
    std::vector<std::size_t> arities_a;
    for (std::size_t k = 1; k <= o.exhaustive_arity; ++k) arities_a.push_back(k);
    csp_sweep(r, o.exhaustive_size, arities_a, o.max_constraints, o.max_constraints, compositions);
    r.notes.push_back(std::to_string(r.cases - before_a) + " problem pairs with sizes <= " +
                      std::to_string(o.exhaustive_size) + ", arity <= " + std::to_string(o.exhaustive_arity) +
                      ", <= " + std::to_string(o.max_constraints) + " constraints each");
    const auto before_b = r.cases;
    std::vector<std::size_t> arities_b;
    for (std::size_t k = 1; k <= o.small_arity; ++k) arities_b.push_back(k);
    csp_sweep(r, o.small_size, arities_b, o.small_max_constraints, o.max_constraints, compositions);
    r.notes.push_back(std::to_string(r.cases - before_b) + " problem pairs with sizes <= " +
                      std::to_string(o.small_size) + ", arity <= " + std::to_string(o.small_arity) + ", first <= " +
                      std::to_string(o.small_max_constraints) + " and second <= " +
                      std::to_string(o.max_constraints) + " constraints");

    // Sampled part: solutions are drawn first and problems are built around
    // them, sharing bodies so that composites are rarely empty.
    Rng rng(o.seed);
    std::uint64_t non_trivial = 0;
    for (std::size_t t = 0; t < o.samples; ++t) {
        const auto a = uniform_index(rng, 1, 3), b = uniform_index(rng, 1, 3), c = uniform_index(rng, 1, 3);
        std::vector<std::size_t> f(a), g(b);
        for (auto& v : f) v = uniform_index(rng, 0, b - 1);
        for (auto& v : g) v = uniform_index(rng, 0, c - 1);
        std::set<CSPConstraint> first, second;
        const auto n_first = uniform_index(rng, 1, 2);
        for (std::size_t i = 0; i < n_first; ++i) {
            const auto k = uniform_index(rng, 1, 2);
            CSPConstraint c1{random_tuple(k, a, rng), {}};
            c1.allowed.insert(image(f, c1.scope));
            while (coin(rng, 0.4)) c1.allowed.insert(random_tuple(k, b, rng));
            first.insert(c1);
        }
        // Second problem: constraints on tuples allowed by the first, with a
        // shared body containing their images under g.
        const auto& pick = *std::next(first.begin(), static_cast<std::ptrdiff_t>(uniform_index(rng, 0, first.size() - 1)));
        std::set<Tuple> body;
        for (const auto& m : pick.allowed) body.insert(image(g, m));
        while (coin(rng, 0.3)) body.insert(random_tuple(pick.arity(), c, rng));
        for (const auto& m : pick.allowed) {
            if (second.size() < 2) second.insert({m, body});
        }
        if (second.size() < 2 && coin(rng)) {
            const auto k = uniform_index(rng, 1, 2);
            CSPConstraint extra{random_tuple(k, b, rng), {}};
            extra.allowed.insert(image(g, extra.scope));
            while (coin(rng, 0.4)) extra.allowed.insert(random_tuple(k, c, rng));
            second.insert(extra);
        }
        const CSPProblem p1(a, b, first), p2(b, c, second);
        const auto composed = compose_csp(p2, p1);
        ++compositions;
        ++r.cases;
        non_trivial += !composed.constraints().empty();
        if (!satisfies(compose_maps(g, f), composed)) {
            r.fail("a composed solution fails " + csp_text(composed) + " built from " + csp_text(p1) + " and " +
                   csp_text(p2));
        }
    }
    r.notes.push_back(std::to_string(o.samples) + " sampled instances (sizes <= 3, arity <= 2, <= 2 constraints), " +
                      std::to_string(non_trivial) + " with non-empty composites");
    r.notes.push_back(std::to_string(compositions) + " compositions formed");
    return r;
}

SuiteReport monoid_compositionality(std::size_t max_order, std::size_t max_points) {
    SuiteReport r("monoid-compositionality");
    std::uint64_t monoids = 0, labelings = 0;
    for (std::size_t s = 0; s <= max_points; ++s) {
        const auto points = numbered_labels("x", s);
        const auto rels = all_relations(points, points);
        std::vector<std::uint32_t> comp(rels.size() * rels.size());
        for (std::size_t t = 0; t < rels.size(); ++t) {
            for (std::size_t l = 0; l < rels.size(); ++l) {
                comp[t * rels.size() + l] = static_cast<std::uint32_t>(relation_mask(compose(rels[t], rels[l])));
            }
        }
        for (std::size_t n = 1; n <= max_order; ++n) {
            for (const auto& m : enumerate_monoids(n)) {
                if (s == 0) ++monoids;
                // products[x][y]: every m * n with m in x, n in y (element masks).
                const std::size_t subsets = std::size_t{1} << n;
                std::vector<std::uint32_t> products(subsets * subsets);
                for (std::size_t x = 0; x < subsets; ++x) {
                    for (std::size_t y = 0; y < subsets; ++y) {
                        std::uint32_t out = 0;
                        for (std::size_t u = 0; u < n; ++u) {
                            if (!(x >> u & 1)) continue;
                            for (std::size_t v = 0; v < n; ++v) {
                                if (y >> v & 1) out |= 1u << m.multiply(u, v);
                            }
                        }
                        products[x * subsets + y] = out;
                    }
                }
                std::size_t labeling_count = 1;
                for (std::size_t k = 0; k < s; ++k) labeling_count *= n;
                for (std::size_t code = 0; code < labeling_count; ++code) {
                    std::vector<std::size_t> assignment(s);
                    for (std::size_t k = 0, rest = code; k < s; ++k, rest /= n) assignment[k] = rest % n;
                    const MonoidLabeling lab(points, assignment, n);
                    ++labelings;
                    std::vector<std::uint32_t> allowed(rels.size());
                    for (std::size_t t = 0; t < rels.size(); ++t) {
                        for (auto e : constraint_set(m, rels[t], lab)) allowed[t] |= 1u << e;
                    }
                    for (std::size_t t = 0; t < rels.size(); ++t) {
                        for (std::size_t l = 0; l < rels.size(); ++l) {
                            ++r.cases;
                            const auto got = products[allowed[t] * subsets + allowed[l]];
                            const auto bound = allowed[comp[t * rels.size() + l]];
                            if ((got & ~bound) != 0) {
                                const auto bad = static_cast<std::size_t>(std::countr_zero(got & ~bound));
                                r.fail("element " + std::to_string(bad) + " of a monoid of order " +
                                       std::to_string(n) + " is a product from L(" + pairs_text(rels[t]) + ") and L(" +
                                       pairs_text(rels[l]) + ") outside L of their composite");
                            }
                        }
                    }
                }
            }
        }
    }
    r.notes.push_back(std::to_string(monoids) + " monoids up to isomorphism, " + std::to_string(labelings) +
                      " labelings");
    return r;
}

}  // namespace compcon
