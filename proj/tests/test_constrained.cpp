#include "doctest.h"

#include "compcon/encodings.hpp"
#include "compcon/error.hpp"
#include "compcon/random.hpp"

using namespace compcon;

namespace {

const LabelList in_a{"A"};
const LabelList out_b{"B1", "B2"};
const FiniteRelation sigma1(in_a, out_b, {{0, 1}});
const FiniteRelation sigma2(in_a, out_b, {{0, 0}});

// Morphisms are numbers, constraints are upper bounds; composition adds the
// numbers but takes the smaller bound, which is not lax.
struct BrokenEncoding {
    using Constraint = int;
    using Morphism = int;
    using Object = int;
    std::string_view name() const { return "broken"; }
    bool supports(Structure s) const { return s == Structure::sequential; }
    std::optional<std::string> violation(int m, int c) const {
        if (m > c) return std::to_string(m) + " exceeds " + std::to_string(c);
        return std::nullopt;
    }
    int compose_constraints(int g, int f) const { return std::min(g, f); }
    int compose_morphisms(int g, int f) const { return g + f; }
    int identity_constraint(int) const { return 0; }
    int identity_morphism(int) const { return 0; }
    bool leq(int a, int b) const { return a <= b; }
};

}  // namespace

TEST_CASE("pairs are certified on construction") {
    ConstrainedCategory<SignallingEncoding> cat(SignallingEncoding{}, true);
    const FactorSpace a({{"A", 2}});
    const auto id = cat.pair(FiniteRelation::identity(a.labels()), StochChannel::identity(a));
    CHECK(id.certified());
    CHECK(id == cat.identity(a));

    const auto f = parity_counterexample();
    CHECK(cat.pair(sigma1, f).certified());
    CHECK(cat.pair(sigma2, f).certified());
    try {
        (void)cat.pair(meet(sigma1, sigma2), f);
        FAIL("meet accepted");
    } catch (const UnsatisfiedConstraint& e) {
        CHECK(e.witness() == "joint output [B1,B2] depends on input A");
    }
    CHECK_THROWS_AS(cat.pair(FiniteRelation::identity(a.labels()), f), BoundaryMismatch);
}

TEST_CASE("unchecked pairs are refused by every operation") {
    ConstrainedCategory<SignallingEncoding> cat(SignallingEncoding{}, true);
    const auto f = parity_counterexample();
    const auto bad = cat.pair_unchecked(meet(sigma1, sigma2), f);
    CHECK(bad.unchecked());
    CHECK_FALSE(cat.holds(bad));
    CHECK_THROWS_AS(cat.compose(cat.identity(f.cod()), bad), PreconditionViolated);
    CHECK_THROWS_AS(cat.tensor(bad, cat.identity(FactorSpace())), PreconditionViolated);
    CHECK_THROWS_AS(cat.relax(bad, sigma1), PreconditionViolated);
}

TEST_CASE("relaxation follows the order") {
    ConstrainedCategory<SignallingEncoding> cat(SignallingEncoding{}, true);
    const auto f = parity_counterexample();
    const auto p = cat.pair(sigma1, f);
    const auto full = cat.relax(p, FiniteRelation::full(in_a, out_b));
    CHECK(full.certified());
    CHECK(cat.holds(full));
    CHECK(full.morphism() == f);
    CHECK(cat.relax(p, sigma1) == p);
    CHECK_THROWS_AS(cat.relax(p, sigma2), NotARelaxation);

    // Monoid constraints weaken by dropping pairs.
    ConstrainedCategory<MonoidEncoding> mon(
        MonoidEncoding(FiniteMonoid(2, {0, 1, 1, 1}, 0), MonoidLabeling({"s1", "s2"}, {1, 0}, 2)), true);
    const FiniteRelation tau({"s1", "s2"}, {"s1", "s2"}, {{0, 1}});
    const auto z = mon.pair(tau, 1);
    CHECK(mon.relax(z, FiniteRelation::empty(tau.src(), tau.dst())).certified());
    CHECK_THROWS_AS(mon.relax(z, tau.with(1, 1)), NotARelaxation);
    CHECK_THROWS_AS(mon.pair(tau, 0), UnsatisfiedConstraint);
}

TEST_CASE("re-checking exposes a composition that is not lax") {
    ConstrainedCategory<BrokenEncoding> checked(BrokenEncoding{}, true);
    const auto p = checked.pair(3, 3);
    CHECK_THROWS_AS(checked.compose(p, p), LaxityViolation);
    CHECK(checked.compose(checked.pair(5, 2), checked.pair(7, 3)) == checked.pair(5, 5));

    ConstrainedCategory<BrokenEncoding> trusting(BrokenEncoding{}, false);
    const auto q = trusting.pair(3, 3);
    const auto qq = trusting.compose(q, q);
    CHECK(qq.certified());
    CHECK_FALSE(trusting.holds(qq));
}

TEST_CASE("unsupported structure") {
    ConstrainedCategory<SectorialEncoding> biproduct(SectorialEncoding(SectorTensor::biproduct), true);
    const SectorSpace a({{"k", 1}});
    CHECK_THROWS_AS(biproduct.cup(a), UnsupportedStructure);
    CHECK_THROWS_AS(biproduct.cap(a), UnsupportedStructure);
    ConstrainedCategory<SectorialEncoding> kron(SectorialEncoding(SectorTensor::kronecker), true);
    CHECK(kron.cup(a).certified());
    CHECK_FALSE(MonoidEncoding(FiniteMonoid::cyclic_group(2), MonoidLabeling()).supports(Structure::tensor));
    CHECK_FALSE(CSPEncoding{}.supports(Structure::dagger));
}

TEST_CASE("disjoint tensors have strict units") {
    ConstrainedCategory<SignallingEncoding> sig(SignallingEncoding{}, true);
    const auto p = sig.pair(sigma1, parity_counterexample());
    const auto unit = sig.identity(FactorSpace());
    CHECK(sig.tensor(p, unit) == p);
    CHECK(sig.tensor(unit, p) == p);

    ConstrainedCategory<SectorialEncoding> bi(SectorialEncoding(SectorTensor::biproduct), true);
    const SectorSpace a({{"k", 2}});
    const auto id = bi.identity(a);
    CHECK(bi.tensor(id, bi.identity(bi.encoding().unit())) == id);
}

TEST_CASE("sectorial composition example") {
    ConstrainedCategory<SectorialEncoding> cat(SectorialEncoding{}, true);
    const SectorSpace a({{"1", 1}});
    const SectorSpace b({{"1", 1}, {"2", 1}});
    const SectorSpace c({{"1", 1}});
    const auto column = cat.pair(FiniteRelation(a.labels(), b.labels(), {{0, 0}, {0, 1}}),
                                 BlockMatrix(a, b, Matrix(2, 1, {1, 1})));
    const auto e11 = cat.pair(FiniteRelation(b.labels(), c.labels(), {{0, 0}}), BlockMatrix(b, c, Matrix(1, 2, {1, 0})));
    const auto composed = cat.compose(e11, column);
    CHECK(composed.constraint() == FiniteRelation(a.labels(), c.labels(), {{0, 0}}));
    CHECK(composed.constraint() == compose(e11.constraint(), column.constraint()));
    CHECK(composed.morphism().entries() == Matrix(1, 1, {1}));
    CHECK(cat.holds(composed));
}

TEST_CASE("signalling tensor example") {
    ConstrainedCategory<SignallingEncoding> cat(SignallingEncoding{}, true);
    const FactorSpace c({{"C", 2}});
    const auto bit = cat.pair(FiniteRelation::full(c.labels(), c.labels()), StochChannel::identity(c));
    const auto both = cat.tensor(cat.pair(sigma1, parity_counterexample()), bit);
    CHECK(both.morphism().dom().size() == 2);
    CHECK(both.morphism().cod().size() == 3);
    CHECK(both.constraint() == FiniteRelation(LabelList{"A", "C"}, LabelList{"B1", "B2", "C"}, {{0, 1}, {1, 2}}));
    CHECK(cat.holds(both));
}

TEST_CASE("sectorial tensor of full-support blocks") {
    ConstrainedCategory<SectorialEncoding> cat(SectorialEncoding{}, true);
    Rng rng(71);
    for (int t = 0; t < 50; ++t) {
        const auto a = random_sector_space(rng, "a", 2, 2), b = random_sector_space(rng, "b", 2, 2);
        const auto x = random_sector_space(rng, "x", 2, 2), y = random_sector_space(rng, "y", 2, 2);
        auto full = [&](const SectorSpace& d, const SectorSpace& e) {
            Matrix m(e.total_dim(), d.total_dim());
            for (std::size_t r = 0; r < m.rows(); ++r) {
                for (std::size_t s = 0; s < m.cols(); ++s) m(r, s) = Rational(static_cast<std::int64_t>(r + s + 1), 2);
            }
            return cat.pair(FiniteRelation::full(d.labels(), e.labels()), BlockMatrix(d, e, m));
        };
        const auto p = full(a, b), q = full(x, y);
        const auto pq = cat.tensor(p, q);
        CHECK(support_relation(pq.morphism()) ==
              tensor_product(support_relation(p.morphism()), support_relation(q.morphism())));
    }
}

TEST_CASE("dagger examples") {
    ConstrainedCategory<SectorialEncoding> cat(SectorialEncoding{}, true);
    const SectorSpace a({{"k", 2}, {"l", 1}});
    CHECK(cat.dagger(cat.identity(a)) == cat.identity(a));
    Rng rng(72);
    for (int t = 0; t < 50; ++t) {
        const auto d = random_sector_space(rng, "d", 3, 2), e = random_sector_space(rng, "e", 3, 2);
        const auto tau = random_relation(d.labels(), e.labels(), rng);
        const auto p = cat.pair(tau, random_block_matrix_within(d, e, tau, rng));
        const auto back = cat.dagger(p);
        CHECK(back.constraint() == converse(tau));
        CHECK(cat.holds(back));
        CHECK(cat.dagger(back) == p);
    }
    ConstrainedCategory<SignallingEncoding> sig(SignallingEncoding{}, true);
    CHECK_FALSE(sig.encoding().supports(Structure::dagger));
}

TEST_CASE("monoid composition multiplies in order") {
    // Left-zero semigroup with identity: a * b = a for a, b != e.
    const FiniteMonoid m(3, {0, 1, 2, 1, 1, 1, 2, 2, 2}, 0);
    ConstrainedCategory<MonoidEncoding> cat(MonoidEncoding(m, MonoidLabeling({"x"}, {0}, 3)), true);
    const auto empty = FiniteRelation::empty(LabelList{"x"}, LabelList{"x"});
    const auto p = cat.pair(empty, 1), q = cat.pair(empty, 2);
    CHECK(cat.compose(p, q).morphism() == 1);
    CHECK(cat.compose(q, p).morphism() == 2);
}

TEST_CASE("CSP composition is not associative") {
    // x; a, b; p, q; z, w
    const CSPProblem c1(1, 2, {{{0}, {{0}, {1}}}});
    const CSPProblem c2(2, 2, {{{0}, {{0}}}, {{1}, {{1}}}});
    const CSPProblem c3(2, 2, {{{0}, {{0}}}, {{1}, {{0}}}});
    const auto left = compose_csp(compose_csp(c3, c2), c1);
    const auto right = compose_csp(c3, compose_csp(c2, c1));
    CHECK(left == CSPProblem(1, 2, {{{0}, {{0}}}}));
    CHECK(right.constraints().empty());
    CHECK_FALSE(satisfies({1}, left));
    CHECK(satisfies({1}, right));

    ConstrainedCategory<CSPEncoding> cat(CSPEncoding{}, true);
    const auto f = cat.pair(c1, FinMap{2, {0}});
    const auto g = cat.pair(c2, FinMap{2, {0, 1}});
    const auto h = cat.pair(c3, FinMap{2, {0, 0}});
    CHECK_FALSE(cat.compose(h, cat.compose(g, f)) == cat.compose(cat.compose(h, g), f));
}

TEST_CASE("CSP identity works on the right only") {
    ConstrainedCategory<CSPEncoding> cat(CSPEncoding{}, true);
    const CSPProblem c(1, 2, {{{0}, {{0}, {1}}}});
    const auto p = cat.pair(c, FinMap{2, {1}});
    CHECK(cat.compose(p, cat.identity(1)) == p);
    const auto left = cat.compose(cat.identity(2), p);
    CHECK(left.constraint().constraints().empty());
    CHECK_FALSE(left == p);
    const CSPProblem single(1, 2, {{{0}, {{1}}}});
    const auto s = cat.pair(single, FinMap{2, {1}});
    CHECK(cat.compose(cat.identity(2), s) == s);
}
