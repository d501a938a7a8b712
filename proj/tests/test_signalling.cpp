#include "doctest.h"

#include "compcon/error.hpp"
#include "compcon/random.hpp"
#include "compcon/signalling.hpp"
#include "oracles.hpp"

using namespace compcon;

namespace {

const LabelList in_a{"A"};
const LabelList out_b{"B1", "B2"};
const FiniteRelation sigma1(in_a, out_b, {{0, 1}});
const FiniteRelation sigma2(in_a, out_b, {{0, 0}});

StochChannel random_channel(const FactorSpace& dom, const FactorSpace& cod, Rng& rng) {
    return StochChannel(dom, cod, random_stochastic_matrix(cod.total(), dom.total(), rng));
}

}  // namespace

TEST_CASE("channels validate stochasticity exactly") {
    FactorSpace bit({{"x", 2}});
    CHECK_THROWS_AS(StochChannel(bit, bit, Matrix(2, 2, {1, 0, 0, Rational(99, 100)})), InvalidValue);
    CHECK_THROWS_AS(StochChannel(bit, bit, Matrix(2, 2, {2, 0, -1, 1})), InvalidValue);
    CHECK_THROWS_AS(StochChannel(bit, bit, Matrix(1, 2, {1, 1})), ShapeMismatch);
    CHECK_THROWS_AS(FactorSpace({{"x", 2}, {"x", 2}}), LabelCollision);
}

TEST_CASE("discard and prepare") {
    FactorSpace two_bits({{"x", 2}, {"y", 2}});
    CHECK(discard(two_bits, {}) == StochChannel::identity(two_bits));
    const auto effect = discard(two_bits, {0, 1});
    CHECK(effect.cod().total() == 1);
    CHECK(effect.matrix() == Matrix(1, 4, {1, 1, 1, 1}));
    const auto d = discard(two_bits, {1});
    CHECK(d.matrix() == Matrix(2, 4, {1, 1, 0, 0, 0, 0, 1, 1}));
    CHECK_THROWS_AS(discard(two_bits, {2}), IndexOutOfRange);

    FactorSpace bit({{"x", 2}});
    CHECK(prepare_uniform(bit, {0}).matrix() == Matrix(2, 1, {Rational(1, 2), Rational(1, 2)}));
    CHECK(prepare_uniform(bit, {}) == StochChannel::identity(bit));

    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        auto s = random_factor_space(rng, "f", 0, 3, 3);
        std::vector<std::size_t> subset;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (coin(rng)) subset.push_back(k);
        }
        CHECK(compose(discard(s, subset), prepare_uniform(s, subset)) ==
              StochChannel::identity(s.restrict_to(s.complement(subset))));
    }
    CHECK(compose(discard(two_bits, {0, 1}), random_channel(two_bits, two_bits, rng)) == effect);
}

TEST_CASE("parity counterexample") {
    const auto f = parity_counterexample();
    CHECK(f.matrix() == Matrix(4, 2, {Rational(1, 2), 0, 0, Rational(1, 2), 0, Rational(1, 2), Rational(1, 2), 0}));
    CHECK(check_signalling(f, sigma1));
    CHECK(check_signalling(f, sigma2));
    const auto both = meet(sigma1, sigma2);
    CHECK(both.pair_count() == 0);
    CHECK_FALSE(check_signalling(f, both));
    CHECK(find_signalling_violation(f, both) == std::optional<std::string>("joint output [B1,B2] depends on input A"));
    CHECK(check_signalling_atomic(f, both));
    CHECK_FALSE(check_cosignalling(f, both));
    CHECK(oracle::signalling(f, sigma1));
    CHECK_FALSE(oracle::signalling(f, both));
}

TEST_CASE("trivial cases of the three checks") {
    FactorSpace s({{"x", 2}, {"y", 3}});
    const auto id = StochChannel::identity(s);
    CHECK(check_signalling(id, FiniteRelation::full(s.labels(), s.labels())));
    CHECK(check_signalling_atomic(id, FiniteRelation::identity(s.labels())));
    CHECK(check_cosignalling(id, FiniteRelation::identity(s.labels())));
    const auto noise = uniform_noise(s, FactorSpace({{"u", 2}, {"v", 2}}));
    CHECK(check_cosignalling(noise, FiniteRelation::empty(s.labels(), noise.cod().labels())));
    Rng rng(32);
    const auto f = random_channel(s, s, rng);
    CHECK(check_signalling_atomic(f, FiniteRelation::full(s.labels(), s.labels())));
}

TEST_CASE("cosignalling refuses channels that do not preserve the uniform state") {
    FactorSpace bit({{"x", 2}});
    StochChannel reset(bit, bit, Matrix(2, 2, {1, 1, 0, 0}));
    CHECK_FALSE(preserves_uniform(reset));
    CHECK_THROWS_AS(check_cosignalling(reset, FiniteRelation::full(bit.labels(), bit.labels())), PreconditionViolated);
}

TEST_CASE("checks agree with the marginal oracles") {
    Rng rng(33);
    for (int t = 0; t < 300; ++t) {
        auto dom = random_factor_space(rng, "i", 1, 3, 2);
        auto cod = random_factor_space(rng, "o", 1, 3, 2);
        auto rel = random_relation(dom.labels(), cod.labels(), rng);
        auto f = coin(rng) ? random_channel(dom, cod, rng)
                           : random_channel_within(dom, cod, random_relation(dom.labels(), cod.labels(), rng), rng);
        const bool full = check_signalling(f, rel);
        const bool atomic = check_signalling_atomic(f, rel);
        CHECK(full == oracle::signalling(f, rel));
        CHECK(atomic == oracle::signalling_atomic(f, rel));
        if (full) CHECK(atomic);
    }
}

TEST_CASE("generated channels satisfy their relation and monotonicity") {
    Rng rng(34);
    for (int t = 0; t < 200; ++t) {
        auto dom = random_factor_space(rng, "i", 1, 3, 3);
        auto cod = random_factor_space(rng, "o", 1, 3, 3);
        auto rel = random_relation(dom.labels(), cod.labels(), rng);
        auto f = random_channel_within(dom, cod, rel, rng);
        REQUIRE(check_signalling(f, rel));
        auto bigger = rel;
        for (std::size_t i = 0; i < dom.size(); ++i) {
            for (std::size_t j = 0; j < cod.size(); ++j) {
                if (coin(rng, 0.3)) bigger = bigger.with(i, j);
            }
        }
        CHECK(check_signalling(f, bigger));
    }
}

TEST_CASE("laxity under compose and tensor") {
    Rng rng(35);
    for (int t = 0; t < 150; ++t) {
        auto a = random_factor_space(rng, "a", 1, 3, 2);
        auto b = random_factor_space(rng, "b", 1, 3, 2);
        auto c = random_factor_space(rng, "c", 1, 2, 2);
        auto tau = random_relation(a.labels(), b.labels(), rng);
        auto sigma = random_relation(b.labels(), c.labels(), rng);
        auto f = random_channel_within(a, b, tau, rng);
        auto g = random_channel_within(b, c, sigma, rng);
        CHECK(check_signalling(compose(g, f), compose(sigma, tau)));

        auto x = random_factor_space(rng, "x", 1, 2, 2);
        auto y = random_factor_space(rng, "y", 1, 2, 2);
        auto lambda = random_relation(x.labels(), y.labels(), rng);
        auto h = random_channel_within(x, y, lambda, rng);
        CHECK(check_signalling(tensor(f, h), tensor_disjoint(tau, lambda)));
    }
    // The parity channel followed by random maps constrained downstream.
    const auto f = parity_counterexample();
    for (int t = 0; t < 100; ++t) {
        auto c = random_factor_space(rng, "c", 1, 2, 2);
        auto lambda = random_relation(out_b, c.labels(), rng);
        auto g = random_channel_within(f.cod(), c, lambda, rng);
        CHECK(check_signalling(compose(g, f), compose(lambda, sigma1)));
    }
}

TEST_CASE("tensor and permutations") {
    FactorSpace a({{"a", 2}}), b({{"b", 3}});
    CHECK(tensor(StochChannel::identity(a), StochChannel::identity(b)) ==
          StochChannel::identity(FactorSpace::concat(a, b)));
    FactorSpace ab({{"a", 2}, {"b", 3}});
    const auto swap = permute_factors(ab, {1, 0});
    CHECK(swap.cod() == FactorSpace({{"b", 3}, {"a", 2}}));
    CHECK(compose(permute_factors(swap.cod(), {1, 0}), swap) == StochChannel::identity(ab));
    CHECK(check_signalling(swap, FiniteRelation(ab.labels(), swap.cod().labels(), {{0, 1}, {1, 0}})));
    CHECK_FALSE(check_signalling(swap, FiniteRelation(ab.labels(), swap.cod().labels(), {{0, 0}, {1, 1}})));
    const auto flip = permute_values(ab, 1, {2, 0, 1});
    CHECK(check_signalling(flip, FiniteRelation::identity(ab.labels())));
    CHECK_THROWS_AS(permute_values(ab, 1, {0, 0, 1}), InvalidValue);
    CHECK_THROWS_AS(permute_factors(ab, {0, 0}), InvalidValue);
}

TEST_CASE("domain atomicity") {
    Rng rng(36);
    for (int t = 0; t < 200; ++t) {
        auto dom = random_factor_space(rng, "i", 1, 3, 2);
        auto cod = random_factor_space(rng, "o", 1, 3, 2);
        auto rel = random_relation(dom.labels(), cod.labels(), rng);
        auto f = random_channel_within(dom, cod, rel, rng);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cod.size()); ++mask) {
            IndexSet outs;
            for (std::size_t j = 0; j < cod.size(); ++j) {
                if (mask >> j & 1) outs.push_back(j);
            }
            CHECK(check_domain_atomicity(f, rel, outs));
        }
    }
    const auto f = parity_counterexample();
    CHECK_THROWS_AS(check_domain_atomicity(f, meet(sigma1, sigma2), {}), PreconditionViolated);
    CHECK(check_domain_atomicity(f, sigma1, {0, 1}));
}
