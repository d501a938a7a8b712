#include "doctest.h"

#include "compcon/error.hpp"
#include "compcon/monoidrel.hpp"
#include "compcon/random.hpp"

using namespace compcon;

namespace {

// {e, z}: z absorbing.
FiniteMonoid absorbing() { return FiniteMonoid(2, {0, 1, 1, 1}, 0); }

// Table count by direct search over all binary operations with identity 0,
// then grouping by isomorphism class through explicit relabelings.
std::size_t count_classes_by_search(std::size_t n) {
    const std::size_t free = (n - 1) * (n - 1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= n;
    std::vector<std::vector<std::size_t>> reps;
    std::vector<std::size_t> perm(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::size_t> t(n * n);
        for (std::size_t a = 0; a < n; ++a) t[a] = t[a * n] = a;
        std::size_t rest = code;
        for (std::size_t a = 1; a < n; ++a) {
            for (std::size_t b = 1; b < n; ++b) {
                t[a * n + b] = rest % n;
                rest /= n;
            }
        }
        bool assoc = true;
        for (std::size_t a = 0; a < n && assoc; ++a) {
            for (std::size_t b = 0; b < n && assoc; ++b) {
                for (std::size_t c = 0; c < n && assoc; ++c) assoc = t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
            }
        }
        if (!assoc) continue;
        bool known = false;
        for (const auto& r : reps) {
            for (std::size_t i = 0; i < n; ++i) perm[i] = i;
            do {
                bool same = true;
                for (std::size_t a = 0; a < n && same; ++a) {
                    for (std::size_t b = 0; b < n && same; ++b) same = r[perm[a] * n + perm[b]] == perm[t[a * n + b]];
                }
                known = known || same;
            } while (!known && std::next_permutation(perm.begin() + 1, perm.end()));
            if (known) break;
        }
        if (!known) reps.push_back(t);
    }
    return reps.size();
}

}  // namespace

TEST_CASE("monoid validation") {
    CHECK_THROWS_AS(FiniteMonoid(2, {0, 1, 1}, 0), ShapeMismatch);
    CHECK_THROWS_AS(FiniteMonoid(2, {0, 1, 1, 0}, 1), InvalidValue);
    CHECK_THROWS_AS(FiniteMonoid(2, {0, 1, 1, 2}, 0), InvalidValue);
    // Not associative: 1*1 = 2, 2*1 = 1, 1*2 = 0.
    CHECK_THROWS_AS(FiniteMonoid(3, {0, 1, 2, 1, 2, 0, 2, 1, 0}, 0), InvalidValue);
    CHECK(FiniteMonoid::cyclic_group(4).is_group());
    CHECK_FALSE(absorbing().is_group());
}

TEST_CASE("monoids of small order") {
    CHECK(enumerate_monoids(1).size() == 1);
    CHECK(enumerate_monoids(2).size() == 2);
    CHECK(enumerate_monoids(3).size() == 7);
    CHECK(enumerate_monoids(4).size() == 35);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(enumerate_monoids(n).size() == count_classes_by_search(n));
    CHECK_THROWS_AS(enumerate_monoids(5), ExplosionError);
}

TEST_CASE("absorbing element example") {
    const LabelList s{"s1", "s2"};
    MonoidLabeling lab(s, {1, 0}, 2);
    FiniteRelation tau(s, s, {{0, 1}});
    CHECK(constraint_set(absorbing(), tau, lab) == IndexSet{1});
    CHECK(check_monoid_constraint(absorbing(), 1, tau, lab));
    CHECK_FALSE(check_monoid_constraint(absorbing(), 0, tau, lab));
    CHECK(constraint_set(absorbing(), FiniteRelation::empty(s, s), lab) == IndexSet{0, 1});
}

TEST_CASE("identity relation admits the identity element") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const auto& m : enumerate_monoids(n)) {
            const LabelList s{"x", "y", "z"};
            for (std::size_t code = 0; code < n * n * n; ++code) {
                MonoidLabeling lab(s, {code % n, code / n % n, code / n / n}, n);
                CHECK(check_monoid_constraint(m, m.identity(), FiniteRelation::identity(s), lab));
            }
        }
    }
}

TEST_CASE("groups satisfy every relation") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const auto& m : enumerate_monoids(n)) {
            if (!m.is_group()) continue;
            const LabelList s{"x", "y"};
            for (std::size_t code = 0; code < n * n; ++code) {
                MonoidLabeling lab(s, {code % n, code / n}, n);
                for (std::uint64_t mask = 0; mask < 16; ++mask) {
                    std::vector<FiniteRelation::Pair> pairs;
                    for (std::size_t c = 0; c < 4; ++c) {
                        if (mask >> c & 1) pairs.emplace_back(c / 2, c % 2);
                    }
                    CHECK(constraint_set(m, FiniteRelation(s, s, pairs), lab).size() == n);
                }
            }
        }
    }
}

TEST_CASE("adding pairs only removes elements") {
    Rng rng(51);
    const auto monoids = enumerate_monoids(3);
    const LabelList s{"x", "y", "z"};
    for (int t = 0; t < 300; ++t) {
        const auto& m = monoids[uniform_index(rng, 0, monoids.size() - 1)];
        MonoidLabeling lab(s, {uniform_index(rng, 0, 2), uniform_index(rng, 0, 2), uniform_index(rng, 0, 2)}, 3);
        auto small = random_relation(s, s, rng);
        auto large = small.with(uniform_index(rng, 0, 2), uniform_index(rng, 0, 2));
        const auto ls = constraint_set(m, small, lab);
        const auto ll = constraint_set(m, large, lab);
        CHECK(std::includes(ls.begin(), ls.end(), ll.begin(), ll.end()));
    }
}

TEST_CASE("boundary errors") {
    const LabelList s{"x", "y"};
    MonoidLabeling lab(s, {0, 1}, 2);
    CHECK_THROWS_AS(check_monoid_constraint(absorbing(), 0, FiniteRelation::identity(LabelList{"x"}), lab),
                    BoundaryMismatch);
    CHECK_THROWS_AS(MonoidLabeling(s, {0, 2}, 2), IndexOutOfRange);
}
