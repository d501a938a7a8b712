#include "doctest.h"

#include "compcon/cspcat.hpp"
#include "compcon/error.hpp"
#include "compcon/random.hpp"

using namespace compcon;

TEST_CASE("problem validation") {
    CHECK_THROWS_AS(CSPProblem(2, 2, {{{2}, {{0}}}}), IndexOutOfRange);
    CHECK_THROWS_AS(CSPProblem(2, 2, {{{0}, {{0, 1}}}}), InvalidValue);
    CHECK_THROWS_AS(CSPProblem(2, 2, {{{}, {}}}), InvalidValue);
}

TEST_CASE("satisfaction examples") {
    CSPProblem none(2, 2, {});
    CHECK(satisfies({0, 0}, none));
    CHECK(satisfies({1, 0}, CSPProblem::total(2, 2, {1, 2})));

    CSPProblem neq(2, 2, {{{0, 1}, {{0, 1}, {1, 0}}}});
    std::vector<std::vector<std::size_t>> solutions;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            if (satisfies({a, b}, neq)) solutions.push_back({a, b});
        }
    }
    CHECK(solutions == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}});
    CHECK(find_csp_violation({0, 0}, neq) == std::optional<std::string>("scope (0,1) leaves its allowed set"));
    CHECK_THROWS_AS(satisfies({0}, neq), ShapeMismatch);
    CHECK_THROWS_AS(satisfies({0, 2}, neq), IndexOutOfRange);
}

TEST_CASE("composition rule examples") {
    // x = 0; a, b = 0, 1; p = 0.
    CSPProblem c1(1, 2, {{{0}, {{0}, {1}}}});
    CSPProblem both(2, 1, {{{0}, {{0}}}, {{1}, {{0}}}});
    CHECK(compose_csp(both, c1) == CSPProblem(1, 1, {{{0}, {{0}}}}));
    CSPProblem only_a(2, 1, {{{0}, {{0}}}});
    CHECK(compose_csp(only_a, c1).constraints().empty());
    CHECK_THROWS_AS(compose_csp(c1, c1), BoundaryMismatch);
}

TEST_CASE("composing with the total problem yields total bodies") {
    CSPProblem c1(2, 2, {{{0, 1}, {{0, 1}}}, {{1}, {{0}}}});
    const auto total = CSPProblem::total(2, 3, {1, 2});
    const auto composed = compose_csp(total, c1);
    for (const auto& c : composed.constraints()) {
        const auto expected = c.arity() == 1 ? 3u : 9u;
        CHECK(c.allowed.size() == expected);
    }
    CHECK(composed.constraints().size() == 2);
}

TEST_CASE("mismatched arities are skipped and counted") {
    CSPProblem c1(2, 2, {{{0}, {{0}}}, {{0, 1}, {{0, 1}}}});
    CSPProblem c2(2, 2, {{{0}, {{1}}}});
    const auto report = compose_csp_report(c2, c1);
    CHECK(report.skipped_arity_pairs == 1);
    CHECK(report.problem == CSPProblem(2, 2, {{{0}, {{1}}}}));
}

TEST_CASE("diagonal problem is satisfied by the identity") {
    const auto d = CSPProblem::diagonal(3, {1, 2});
    CHECK(d.constraints().size() == 12);
    CHECK(satisfies({0, 1, 2}, d));
    CHECK_FALSE(satisfies({0, 0, 2}, d));
}

TEST_CASE("composed solutions solve composed problems") {
    Rng rng(61);
    std::size_t checked = 0;
    for (int t = 0; t < 3000; ++t) {
        const auto a = uniform_index(rng, 1, 3), b = uniform_index(rng, 1, 3), c = uniform_index(rng, 1, 3);
        const auto c1 = random_csp(a, b, 2, 2, rng);
        const auto c2 = random_csp(b, c, 2, 2, rng);
        std::vector<std::size_t> f(a), g(b);
        for (auto& v : f) v = uniform_index(rng, 0, b - 1);
        for (auto& v : g) v = uniform_index(rng, 0, c - 1);
        if (!satisfies(f, c1) || !satisfies(g, c2)) continue;
        ++checked;
        CHECK(satisfies(compose_maps(g, f), compose_csp(c2, c1)));
    }
    CHECK(checked > 100);
}
