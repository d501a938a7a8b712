#include "doctest.h"

#include "compcon/error.hpp"
#include "compcon/random.hpp"
#include "compcon/sectorial.hpp"
#include "oracles.hpp"

using namespace compcon;

namespace {

const SectorSpace two_lines({{"s1", 1}, {"s2", 1}});

BlockMatrix lower_triangle() { return BlockMatrix(two_lines, two_lines, Matrix(2, 2, {1, 0, 1, 1})); }

std::vector<FiniteRelation> all_relations(const LabelList& src, const LabelList& dst) {
    const std::size_t cells = src.size() * dst.size();
    std::vector<FiniteRelation> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        std::vector<FiniteRelation::Pair> pairs;
        for (std::size_t c = 0; c < cells; ++c) {
            if (mask >> c & 1) pairs.emplace_back(c / dst.size(), c % dst.size());
        }
        out.emplace_back(src, dst, pairs);
    }
    return out;
}

}  // namespace

TEST_CASE("sector spaces") {
    CHECK(two_lines.total_dim() == 2);
    CHECK_THROWS_AS(SectorSpace({{"a", 0}}), InvalidValue);
    CHECK_THROWS_AS(SectorSpace({{"a", 1}, {"a", 2}}), LabelCollision);
    const auto p = SectorSpace::product(SectorSpace({{"a", 2}, {"b", 1}}), SectorSpace({{"x", 3}}));
    CHECK(p.labels() == LabelList{"(a,x)", "(b,x)"});
    CHECK(p.dim(0) == 6);
    CHECK(p.total_dim() == 9);
}

TEST_CASE("sectorial check on the worked example") {
    const auto f = lower_triangle();
    const auto labels = two_lines.labels();
    CHECK(check_sectorial(BlockMatrix::identity(two_lines), FiniteRelation::identity(labels)));
    CHECK(check_sectorial(f, FiniteRelation::full(labels, labels)));
    CHECK_FALSE(check_sectorial(f, FiniteRelation::identity(labels)));
    CHECK(find_sectorial_violation(f, FiniteRelation::identity(labels)) ==
          std::optional<std::string>("nonzero block from sector s1 to sector s2"));
    CHECK(support_relation(f) == FiniteRelation(labels, labels, {{0, 0}, {0, 1}, {1, 1}}));
    CHECK(support_relation(BlockMatrix::zero(two_lines, two_lines)) == FiniteRelation::empty(labels, labels));
    CHECK(support_relation(BlockMatrix::identity(two_lines)) == FiniteRelation::identity(labels));
    CHECK_THROWS_AS(check_sectorial(f, FiniteRelation::identity(LabelList{"s2", "s1"})), BoundaryMismatch);
}

TEST_CASE("sectorial check agrees with the entry scan and the discard route") {
    Rng rng(21);
    for (int t = 0; t < 400; ++t) {
        auto a = random_sector_space(rng, "a", 3, 2);
        auto b = random_sector_space(rng, "b", 3, 2);
        auto f = random_block_matrix(a, b, rng);
        auto r = random_relation(a.labels(), b.labels(), rng);
        const bool direct = check_sectorial(f, r);
        CHECK(direct == oracle::sectorial(f, r));
        CHECK(direct == check_sectorial_via_discard(f, r));
        CHECK(direct == leq(support_relation(f), r));
        CHECK(oracle::pairs_of(support_relation(f)) == oracle::support(f));
        CHECK(check_sectorial(f, support_relation(f)));
    }
}

TEST_CASE("discard route is exact on 0/1 matrices with unit sectors") {
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<Sector> sa, sb;
        for (std::size_t k = 0; k < n; ++k) sa.push_back({"a" + std::to_string(k), 1});
        for (std::size_t k = 0; k < 2; ++k) sb.push_back({"b" + std::to_string(k), 1});
        SectorSpace a(sa), b(sb);
        const std::size_t cells = n * 2;
        const auto rels = all_relations(a.labels(), b.labels());
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
            Matrix m(2, n);
            for (std::size_t c = 0; c < cells; ++c) m(c % 2, c / 2) = Rational((mask >> c) & 1);
            BlockMatrix f(a, b, m);
            for (const auto& r : rels) CHECK(check_sectorial(f, r) == check_sectorial_via_discard(f, r));
        }
    }
}

TEST_CASE("laxity against relation composition") {
    Rng rng(22);
    for (int t = 0; t < 300; ++t) {
        auto a = random_sector_space(rng, "a", 3, 2);
        auto b = random_sector_space(rng, "b", 3, 2);
        auto c = random_sector_space(rng, "c", 3, 2);
        auto f = random_block_matrix(a, b, rng);
        auto g = random_block_matrix(b, c, rng);
        CHECK(leq(support_relation(compose(g, f)), compose(support_relation(g), support_relation(f))));
        auto tau = random_relation(a.labels(), b.labels(), rng, 0.6);
        auto sigma = random_relation(b.labels(), c.labels(), rng, 0.6);
        auto f2 = random_block_matrix_within(a, b, tau, rng);
        auto g2 = random_block_matrix_within(b, c, sigma, rng);
        CHECK(check_sectorial(compose(g2, f2), compose(sigma, tau)));
    }
}

TEST_CASE("monoidal laxity for both tensors") {
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        auto a = random_sector_space(rng, "a", 2, 2), b = random_sector_space(rng, "b", 2, 2);
        auto c = random_sector_space(rng, "c", 2, 2), d = random_sector_space(rng, "d", 2, 2);
        auto tau = random_relation(a.labels(), b.labels(), rng);
        auto sigma = random_relation(c.labels(), d.labels(), rng);
        auto f = random_block_matrix_within(a, b, tau, rng);
        auto g = random_block_matrix_within(c, d, sigma, rng);
        CHECK(check_sectorial(direct_sum(f, g), tensor_disjoint(tau, sigma)));
        CHECK(check_sectorial(tensor(f, g), tensor_product(tau, sigma)));
        CHECK(oracle::sectorial(tensor(f, g), tensor_product(tau, sigma)));
    }
}

TEST_CASE("tensor of full-support blocks has the tensor of supports") {
    Rng rng(24);
    for (int t = 0; t < 100; ++t) {
        auto a = random_sector_space(rng, "a", 2, 2), b = random_sector_space(rng, "b", 2, 2);
        auto c = random_sector_space(rng, "c", 2, 2), d = random_sector_space(rng, "d", 2, 2);
        auto tau = random_relation(a.labels(), b.labels(), rng);
        auto sigma = random_relation(c.labels(), d.labels(), rng);
        auto fill = [&](const SectorSpace& x, const SectorSpace& y, const FiniteRelation& r) {
            Matrix m(y.total_dim(), x.total_dim());
            for (auto [k, l] : r.pairs()) {
                for (std::size_t i = 0; i < y.dim(l); ++i) {
                    for (std::size_t j = 0; j < x.dim(k); ++j) m(y.offset(l) + i, x.offset(k) + j) = Rational(1, 2);
                }
            }
            return BlockMatrix(x, y, m);
        };
        const auto p = tensor(fill(a, b, tau), fill(c, d, sigma));
        CHECK(support_relation(p) == tensor_product(tau, sigma));
    }
}

TEST_CASE("tensor is functorial and matches the Kronecker product up to basis order") {
    Rng rng(25);
    for (int t = 0; t < 100; ++t) {
        auto a = random_sector_space(rng, "a", 2, 2), b = random_sector_space(rng, "b", 2, 2);
        auto c = random_sector_space(rng, "c", 2, 2), x = random_sector_space(rng, "x", 2, 2);
        auto y = random_sector_space(rng, "y", 2, 2), z = random_sector_space(rng, "z", 2, 2);
        auto f = random_block_matrix(a, b, rng), g = random_block_matrix(b, c, rng);
        auto h = random_block_matrix(x, y, rng), k = random_block_matrix(y, z, rng);
        CHECK(tensor(compose(g, f), compose(k, h)) == compose(tensor(g, k), tensor(f, h)));
        CHECK(direct_sum(compose(g, f), compose(k, h)) == compose(direct_sum(g, k), direct_sum(f, h)));

        const auto p = tensor(f, h);
        const auto plain = kronecker(f.entries(), h.entries());
        const auto rows = product_basis_map(b, y);
        const auto cols = product_basis_map(a, x);
        for (std::size_t r = 0; r < plain.rows(); ++r) {
            for (std::size_t c2 = 0; c2 < plain.cols(); ++c2) CHECK(p.entries()(rows[r], cols[c2]) == plain(r, c2));
        }
    }
}

TEST_CASE("direct sum of scalars") {
    SectorSpace one({{"p", 1}}), two({{"q", 1}});
    const auto s = direct_sum(BlockMatrix(one, one, Matrix(1, 1, {2})), BlockMatrix(two, two, Matrix(1, 1, {3})));
    CHECK(s.entries() == Matrix(2, 2, {2, 0, 0, 3}));
    CHECK(s.dom().labels() == LabelList{"p", "q"});
}

TEST_CASE("transpose and converse") {
    Rng rng(26);
    for (int t = 0; t < 200; ++t) {
        auto a = random_sector_space(rng, "a", 3, 2), b = random_sector_space(rng, "b", 3, 2);
        auto f = random_block_matrix(a, b, rng);
        auto r = random_relation(a.labels(), b.labels(), rng);
        CHECK(check_sectorial(transpose(f), converse(r)) == check_sectorial(f, r));
    }
}

TEST_CASE("sector cups") {
    CHECK(sector_cup(SectorSpace({{"a", 1}})).entries() == Matrix(1, 1, {1}));
    CHECK(sector_cup(two_lines).entries() == Matrix(4, 1, {1, 0, 0, 1}));
    Rng rng(27);
    for (int t = 0; t < 50; ++t) {
        auto a = random_sector_space(rng, "a", 3, 2);
        CHECK(check_sectorial(sector_cup(a), cup(a.labels())));
        CHECK(check_sectorial(sector_cap(a), cap(a.labels())));
    }
}

TEST_CASE("snake equation for sector cups") {
    Rng rng(28);
    for (int t = 0; t < 30; ++t) {
        auto a = random_sector_space(rng, "a", 3, 2);
        const auto id = BlockMatrix::identity(a);
        const auto right = tensor(id, sector_cup(a));           // A x * -> A x (A x A)
        const auto left = tensor(sector_cap(a), id);            // (A x A) x A -> * x A
        // Associators and unitors are identity matrices in the grouped basis.
        const auto snake = multiply(left.entries(), right.entries());
        CHECK(snake == Matrix::identity(a.total_dim()));
    }
}
