#include <functional>
#include <set>
#include <tuple>

#include "compcon/encodings.hpp"
#include "compcon/error.hpp"
#include "compcon/harness.hpp"
#include "compcon/io.hpp"

namespace compcon {

namespace {

using Outcome = std::optional<std::string>;

// Runs one trial; exceptions (a certificate that fails its re-check, a
// boundary error) count as violations of the law under test.
void trial(SuiteReport& r, const std::function<Outcome()>& body) {
    ++r.cases;
    try {
        if (auto w = body()) r.fail(*w);
    } catch (const LaxityViolation& e) {
        r.fail(e.what());
    } catch (const Error& e) {
        r.fail(std::string("error: ") + e.what());
    }
}

template <class Cat>
Outcome equal_pairs(const typename Cat::Pair& lhs, const typename Cat::Pair& rhs, const std::string& what) {
    if (lhs.constraint() != rhs.constraint()) {
        return what + ": constraints differ, " + io::dump(lhs.constraint()) + " vs " + io::dump(rhs.constraint());
    }
    if (!(lhs.morphism() == rhs.morphism())) return what + ": morphisms differ";
    return std::nullopt;
}

template <class Cat>
Outcome sound(const Cat& cat, const typename Cat::Pair& p, const std::string& what) {
    if (!p.certified() || !cat.holds(p)) return what + " produced a certificate that does not hold";
    return std::nullopt;
}

FiniteRelation add_pairs(FiniteRelation rel, Rng& rng, double p) {
    for (std::size_t i = 0; i < rel.src().size(); ++i) {
        for (std::size_t j = 0; j < rel.dst().size(); ++j) {
            if (coin(rng, p)) rel = rel.with(i, j);
        }
    }
    return rel;
}

struct LawSet {
    std::string encoding;
    SuiteReport associativity, identity, interchange, dagger, snakes, soundness;

    explicit LawSet(std::string name) : encoding(std::move(name)) {
        associativity.suite = encoding + "/associativity";
        identity.suite = encoding + "/identity";
        interchange.suite = encoding + "/interchange";
        dagger.suite = encoding + "/dagger";
        snakes.suite = encoding + "/snakes";
        soundness.suite = encoding + "/certificates";
    }

    void emit(std::vector<SuiteReport>& out) const {
        for (const auto* r : {&associativity, &identity, &interchange, &dagger, &snakes, &soundness}) {
            if (r->cases != 0) out.push_back(*r);
        }
    }
};

void sectorial_laws(SectorTensor mode, std::size_t trials, Rng& rng, std::vector<SuiteReport>& out) {
    using Cat = ConstrainedCategory<SectorialEncoding>;
    const Cat cat(SectorialEncoding(mode), true);
    const auto& enc = cat.encoding();
    LawSet laws(mode == SectorTensor::kronecker ? "sectorial-kronecker" : "sectorial-biproduct");
    auto space = [&](const std::string& prefix) { return random_sector_space(rng, prefix, 2, 2); };
    auto arrow = [&](const SectorSpace& a, const SectorSpace& b) {
        const auto tau = random_relation(a.labels(), b.labels(), rng, 0.6);
        return cat.pair(tau, random_block_matrix_within(a, b, tau, rng));
    };

    for (std::size_t t = 0; t < trials; ++t) {
        trial(laws.associativity, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c"), d = space("d");
            const auto f = arrow(a, b), g = arrow(b, c), h = arrow(c, d);
            return equal_pairs<Cat>(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f),
                                    "h.(g.f) vs (h.g).f");
        });
        trial(laws.identity, [&]() -> Outcome {
            const auto a = space("a"), b = space("b");
            const auto f = arrow(a, b);
            if (auto w = equal_pairs<Cat>(cat.compose(cat.identity(b), f), f, "id.f vs f")) return w;
            return equal_pairs<Cat>(cat.compose(f, cat.identity(a)), f, "f.id vs f");
        });
        trial(laws.interchange, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c");
            const auto x = space("x"), y = space("y"), z = space("z");
            const auto r = arrow(a, b), p = arrow(b, c), s = arrow(x, y), q = arrow(y, z);
            return equal_pairs<Cat>(cat.compose(cat.tensor(p, q), cat.tensor(r, s)),
                                    cat.tensor(cat.compose(p, r), cat.compose(q, s)), "(p x q).(r x s) vs (p.r) x (q.s)");
        });
        trial(laws.dagger, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c");
            const auto p = arrow(a, b), q = arrow(b, c);
            if (auto w = equal_pairs<Cat>(cat.dagger(cat.compose(q, p)), cat.compose(cat.dagger(p), cat.dagger(q)),
                                          "dagger(q.p) vs dagger(p).dagger(q)")) {
                return w;
            }
            if (auto w = equal_pairs<Cat>(cat.dagger(cat.dagger(p)), p, "dagger(dagger(p)) vs p")) return w;
            return equal_pairs<Cat>(cat.dagger(cat.identity(a)), cat.identity(a), "dagger(id) vs id");
        });
        if (mode == SectorTensor::kronecker) {
            trial(laws.snakes, [&]() -> Outcome {
                const auto a = space("a");
                const auto unit = enc.unit();
                auto coh = [&](const SectorSpace& from, const SectorSpace& to) {
                    return cat.pair(enc.coherence_constraint(from, to), enc.coherence_morphism(from, to));
                };
                const auto aa = SectorSpace::product(a, a);
                const auto a_aa = SectorSpace::product(a, aa);
                const auto aa_a = SectorSpace::product(aa, a);
                const auto a_i = SectorSpace::product(a, unit);
                const auto i_a = SectorSpace::product(unit, a);
                const auto id = cat.identity(a);
                // A -> A x I -> A x (A x A) -> (A x A) x A -> I x A -> A
                auto first = coh(a, a_i);
                first = cat.compose(cat.tensor(id, cat.cup(a)), first);
                first = cat.compose(coh(a_aa, aa_a), first);
                first = cat.compose(cat.tensor(cat.cap(a), id), first);
                first = cat.compose(coh(i_a, a), first);
                if (auto w = equal_pairs<Cat>(first, id, "first snake")) return w;
                // A -> I x A -> (A x A) x A -> A x (A x A) -> A x I -> A
                auto second = coh(a, i_a);
                second = cat.compose(cat.tensor(cat.cup(a), id), second);
                second = cat.compose(coh(aa_a, a_aa), second);
                second = cat.compose(cat.tensor(id, cat.cap(a)), second);
                second = cat.compose(coh(a_i, a), second);
                return equal_pairs<Cat>(second, id, "second snake");
            });
        }
        trial(laws.soundness, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c"), x = space("x");
            const auto p = arrow(a, b), q = arrow(b, c), s = arrow(x, a);
            if (auto w = sound(cat, cat.compose(q, p), "compose")) return w;
            if (auto w = sound(cat, cat.tensor(p, s), "tensor")) return w;
            if (auto w = sound(cat, cat.dagger(q), "dagger")) return w;
            return sound(cat, cat.relax(p, add_pairs(p.constraint(), rng, 0.3)), "relax");
        });
    }
    laws.emit(out);
}

void signalling_laws(std::size_t trials, Rng& rng, std::vector<SuiteReport>& out) {
    using Cat = ConstrainedCategory<SignallingEncoding>;
    const Cat cat(SignallingEncoding{}, true);
    LawSet laws("signalling");
    auto space = [&](const std::string& prefix) { return random_factor_space(rng, prefix, 1, 2, 2); };
    auto arrow = [&](const FactorSpace& a, const FactorSpace& b) {
        const auto tau = random_relation(a.labels(), b.labels(), rng, 0.6);
        return cat.pair(tau, random_channel_within(a, b, tau, rng));
    };
    for (std::size_t t = 0; t < trials; ++t) {
        trial(laws.associativity, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c"), d = space("d");
            const auto f = arrow(a, b), g = arrow(b, c), h = arrow(c, d);
            return equal_pairs<Cat>(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f),
                                    "h.(g.f) vs (h.g).f");
        });
        trial(laws.identity, [&]() -> Outcome {
            const auto a = space("a"), b = space("b");
            const auto f = arrow(a, b);
            if (auto w = equal_pairs<Cat>(cat.compose(cat.identity(b), f), f, "id.f vs f")) return w;
            return equal_pairs<Cat>(cat.compose(f, cat.identity(a)), f, "f.id vs f");
        });
        trial(laws.interchange, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c");
            const auto x = space("x"), y = space("y"), z = space("z");
            const auto r = arrow(a, b), p = arrow(b, c), s = arrow(x, y), q = arrow(y, z);
            return equal_pairs<Cat>(cat.compose(cat.tensor(p, q), cat.tensor(r, s)),
                                    cat.tensor(cat.compose(p, r), cat.compose(q, s)), "(p x q).(r x s) vs (p.r) x (q.s)");
        });
        trial(laws.soundness, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c"), x = space("x");
            const auto p = arrow(a, b), q = arrow(b, c), s = arrow(x, x);
            if (auto w = sound(cat, cat.compose(q, p), "compose")) return w;
            if (auto w = sound(cat, cat.tensor(p, s), "tensor")) return w;
            return sound(cat, cat.relax(p, add_pairs(p.constraint(), rng, 0.3)), "relax");
        });
    }
    laws.emit(out);
}

void funcrel_laws(std::size_t trials, Rng& rng, std::vector<SuiteReport>& out) {
    using Cat = ConstrainedCategory<FuncRelEncoding>;
    const Cat cat(FuncRelEncoding{}, true);
    LawSet laws("funcrel");
    auto space = [&](const std::string& prefix) { return random_partitioned_set(rng, prefix, 1, 3, 2); };
    auto arrow = [&](const PartitionedFinSet& a, const PartitionedFinSet& b) {
        while (true) {
            const auto tau = random_relation(a.labels(), b.labels(), rng, 0.6);
            if (auto f = random_function_within(a, b, tau, rng)) return cat.pair(tau, *f);
        }
    };
    for (std::size_t t = 0; t < trials; ++t) {
        trial(laws.associativity, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c"), d = space("d");
            const auto f = arrow(a, b), g = arrow(b, c), h = arrow(c, d);
            return equal_pairs<Cat>(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f),
                                    "h.(g.f) vs (h.g).f");
        });
        trial(laws.identity, [&]() -> Outcome {
            const auto a = space("a"), b = space("b");
            const auto f = arrow(a, b);
            if (auto w = equal_pairs<Cat>(cat.compose(cat.identity(b), f), f, "id.f vs f")) return w;
            return equal_pairs<Cat>(cat.compose(f, cat.identity(a)), f, "f.id vs f");
        });
        trial(laws.interchange, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c");
            const auto x = space("x"), y = space("y"), z = space("z");
            const auto r = arrow(a, b), p = arrow(b, c), s = arrow(x, y), q = arrow(y, z);
            return equal_pairs<Cat>(cat.compose(cat.tensor(p, q), cat.tensor(r, s)),
                                    cat.tensor(cat.compose(p, r), cat.compose(q, s)), "(p x q).(r x s) vs (p.r) x (q.s)");
        });
        trial(laws.soundness, [&]() -> Outcome {
            const auto a = space("a"), b = space("b"), c = space("c"), x = space("x");
            const auto p = arrow(a, b), q = arrow(b, c), s = arrow(x, x);
            if (auto w = sound(cat, cat.compose(q, p), "compose")) return w;
            if (auto w = sound(cat, cat.tensor(p, s), "tensor")) return w;
            return sound(cat, cat.relax(p, add_pairs(p.constraint(), rng, 0.3)), "relax");
        });
    }
    laws.emit(out);
}

void monoid_laws(std::size_t trials, Rng& rng, std::vector<SuiteReport>& out) {
    using Cat = ConstrainedCategory<MonoidEncoding>;
    std::vector<FiniteMonoid> monoids;
    for (std::size_t n = 1; n <= 4; ++n) {
        for (auto& m : enumerate_monoids(n)) monoids.push_back(std::move(m));
    }
    LawSet laws("monoid");
    const std::monostate star;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& m = monoids[uniform_index(rng, 0, monoids.size() - 1)];
        const auto points = numbered_labels("x", uniform_index(rng, 0, 3));
        std::vector<std::size_t> assignment(points.size());
        for (auto& v : assignment) v = uniform_index(rng, 0, m.size() - 1);
        const Cat cat(MonoidEncoding(m, MonoidLabeling(points, assignment, m.size())), true);
        auto arrow = [&] {
            while (true) {
                const auto tau = random_relation(points, points, rng, 0.4);
                const auto allowed = constraint_set(m, tau, cat.encoding().labeling());
                if (!allowed.empty()) return cat.pair(tau, allowed[uniform_index(rng, 0, allowed.size() - 1)]);
            }
        };
        trial(laws.associativity, [&]() -> Outcome {
            const auto f = arrow(), g = arrow(), h = arrow();
            return equal_pairs<Cat>(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f),
                                    "h.(g.f) vs (h.g).f");
        });
        trial(laws.identity, [&]() -> Outcome {
            const auto f = arrow();
            if (auto w = equal_pairs<Cat>(cat.compose(cat.identity(star), f), f, "id.f vs f")) return w;
            return equal_pairs<Cat>(cat.compose(f, cat.identity(star)), f, "f.id vs f");
        });
        trial(laws.soundness, [&]() -> Outcome {
            const auto p = arrow(), q = arrow();
            if (auto w = sound(cat, cat.compose(q, p), "compose")) return w;
            auto weaker = p.constraint();
            for (auto [i, j] : weaker.pairs()) {
                if (coin(rng)) weaker = weaker.without(i, j);
            }
            return sound(cat, cat.relax(p, weaker), "relax");
        });
    }
    laws.emit(out);
}

void csp_laws(std::size_t trials, Rng& rng, std::vector<SuiteReport>& out) {
    using Cat = ConstrainedCategory<CSPEncoding>;
    const Cat cat(CSPEncoding{}, true);
    LawSet laws("csp");
    // A random problem a -> b together with a map solving it.
    auto arrow = [&](std::size_t a, std::size_t b) {
        FinMap f{b, std::vector<std::size_t>(a)};
        for (auto& v : f.map) v = uniform_index(rng, 0, b - 1);
        std::set<CSPConstraint> constraints;
        const auto drawn = random_csp(a, b, 2, 2, rng);
        for (auto c : drawn.constraints()) {
            Tuple image;
            for (auto v : c.scope) image.push_back(f.map[v]);
            c.allowed.insert(image);
            constraints.insert(std::move(c));
        }
        return cat.pair(CSPProblem(a, b, std::move(constraints)), f);
    };
    auto size = [&] { return uniform_index(rng, 1, 3); };
    auto random_map = [&](std::size_t a, std::size_t b) {
        FinMap f{b, std::vector<std::size_t>(a)};
        for (auto& v : f.map) v = uniform_index(rng, 0, b - 1);
        return f;
    };
    auto tuple_in = [&](std::size_t k, std::size_t n) {
        Tuple t(k);
        for (auto& v : t) v = uniform_index(rng, 0, n - 1);
        return t;
    };
    auto image = [](const FinMap& f, const Tuple& t) {
        Tuple out;
        for (auto v : t) out.push_back(f.map[v]);
        return out;
    };
    // Three problems chained through the tuples they allow: the second
    // constrains every tuple the first allows, the third every tuple the
    // second allows, with bodies shared or not at random.
    auto chained = [&]() {
        const auto a = size(), b = size(), c = size(), d = size();
        const auto k = uniform_index(rng, 1, 2);
        const auto f = random_map(a, b), g = random_map(b, c), h = random_map(c, d);
        CSPConstraint first{tuple_in(k, a), {}};
        first.allowed.insert(image(f, first.scope));
        while (coin(rng, 0.6)) first.allowed.insert(tuple_in(k, b));
        std::set<CSPConstraint> second;
        std::set<Tuple> reached;
        for (const auto& m : first.allowed) {
            CSPConstraint con{m, {image(g, m)}};
            while (coin(rng, 0.3)) con.allowed.insert(tuple_in(k, c));
            reached.insert(con.allowed.begin(), con.allowed.end());
            second.insert(std::move(con));
        }
        std::set<Tuple> shared;
        for (const auto& t : reached) shared.insert(image(h, t));
        std::set<CSPConstraint> third;
        for (const auto& t : reached) {
            CSPConstraint con{t, coin(rng) ? shared : std::set<Tuple>{image(h, t)}};
            third.insert(std::move(con));
        }
        return std::tuple{cat.pair(CSPProblem(a, b, {first}), f), cat.pair(CSPProblem(b, c, std::move(second)), g),
                          cat.pair(CSPProblem(c, d, std::move(third)), h)};
    };
    for (std::size_t t = 0; t < trials; ++t) {
        trial(laws.associativity, [&]() -> Outcome {
            if (t % 2 == 1) {
                const auto [f, g, h] = chained();
                return equal_pairs<Cat>(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f),
                                        "h.(g.f) vs (h.g).f");
            }
            const auto a = size(), b = size(), c = size(), d = size();
            const auto f = arrow(a, b), g = arrow(b, c), h = arrow(c, d);
            return equal_pairs<Cat>(cat.compose(h, cat.compose(g, f)), cat.compose(cat.compose(h, g), f),
                                    "h.(g.f) vs (h.g).f");
        });
        trial(laws.identity, [&]() -> Outcome {
            const auto a = size(), b = size();
            const auto f = arrow(a, b);
            if (auto w = equal_pairs<Cat>(cat.compose(cat.identity(b), f), f, "id.f vs f")) return w;
            return equal_pairs<Cat>(cat.compose(f, cat.identity(a)), f, "f.id vs f");
        });
        trial(laws.soundness, [&]() -> Outcome {
            const auto a = size(), b = size(), c = size();
            const auto p = arrow(a, b), q = arrow(b, c);
            if (auto w = sound(cat, cat.compose(q, p), "compose")) return w;
            std::set<CSPConstraint> kept;
            for (const auto& con : p.constraint().constraints()) {
                if (coin(rng)) kept.insert(con);
            }
            return sound(cat, cat.relax(p, CSPProblem(a, b, std::move(kept))), "relax");
        });
    }
    laws.emit(out);
}

}  // namespace

std::vector<SuiteReport> constrained_laws(std::size_t trials, std::uint64_t seed) {
    std::vector<SuiteReport> out;
    Rng rng(seed);
    sectorial_laws(SectorTensor::kronecker, trials, rng, out);
    sectorial_laws(SectorTensor::biproduct, trials, rng, out);
    signalling_laws(trials, rng, out);
    funcrel_laws(trials, rng, out);
    monoid_laws(trials, rng, out);
    csp_laws(trials, rng, out);
    return out;
}

}  // namespace compcon
