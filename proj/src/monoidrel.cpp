#include "compcon/monoidrel.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "compcon/error.hpp"

namespace compcon {

FiniteMonoid::FiniteMonoid(std::size_t size, std::vector<std::size_t> table, std::size_t identity)
    : size_(size), table_(std::move(table)), identity_(identity) {
    if (size_ == 0) throw InvalidValue("a monoid needs at least its identity");
    if (table_.size() != size_ * size_) {
        throw ShapeMismatch("monoid table has " + std::to_string(table_.size()) + " entries, expected " +
                            std::to_string(size_ * size_));
    }
    if (identity_ >= size_) throw IndexOutOfRange("identity index " + std::to_string(identity_));
    for (auto v : table_) {
        if (v >= size_) throw InvalidValue("monoid table entry " + std::to_string(v) + " out of range");
    }
    for (std::size_t a = 0; a < size_; ++a) {
        if (multiply(identity_, a) != a || multiply(a, identity_) != a) {
            throw InvalidValue("element " + std::to_string(identity_) + " is not a two-sided identity");
        }
        for (std::size_t b = 0; b < size_; ++b) {
            for (std::size_t c = 0; c < size_; ++c) {
                if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) {
                    throw InvalidValue("monoid table is not associative at (" + std::to_string(a) + "," +
                                       std::to_string(b) + "," + std::to_string(c) + ")");
                }
            }
        }
    }
}

FiniteMonoid FiniteMonoid::cyclic_group(std::size_t order) {
    std::vector<std::size_t> table(order * order);
    for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) table[a * order + b] = (a + b) % order;
    }
    return FiniteMonoid(order, std::move(table), 0);
}

bool FiniteMonoid::is_group() const {
    for (std::size_t a = 0; a < size_; ++a) {
        bool invertible = false;
        for (std::size_t b = 0; b < size_ && !invertible; ++b) {
            invertible = multiply(a, b) == identity_ && multiply(b, a) == identity_;
        }
        if (!invertible) return false;
    }
    return true;
}

namespace {

bool associative(std::size_t n, const std::vector<std::size_t>& t) {
    for (std::size_t a = 1; a < n; ++a) {
        for (std::size_t b = 1; b < n; ++b) {
            for (std::size_t c = 1; c < n; ++c) {
                if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]]) return false;
            }
        }
    }
    return true;
}

// Smallest relabeling of the table under permutations fixing the identity 0.
std::vector<std::size_t> canonical_form(std::size_t n, const std::vector<std::size_t>& t) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = t;
    do {
        std::vector<std::size_t> relabeled(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) relabeled[perm[a] * n + perm[b]] = perm[t[a * n + b]];
        }
        best = std::min(best, relabeled);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

}  // namespace

std::vector<FiniteMonoid> enumerate_monoids(std::size_t order) {
    if (order == 0) return {};
    if (order > 4) throw ExplosionError("monoid enumeration is limited to order 4");
    const std::size_t n = order;
    std::vector<std::size_t> table(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        table[a] = a;
        table[a * n] = a;
    }
    std::vector<std::size_t> free_cells;
    for (std::size_t a = 1; a < n; ++a) {
        for (std::size_t b = 1; b < n; ++b) free_cells.push_back(a * n + b);
    }
    std::set<std::vector<std::size_t>> seen;
    std::vector<FiniteMonoid> out;
    while (true) {
        if (associative(n, table)) {
            auto canon = canonical_form(n, table);
            if (seen.insert(canon).second) out.emplace_back(n, std::move(canon), 0);
        }
        std::size_t k = 0;
        for (; k < free_cells.size(); ++k) {
            if (++table[free_cells[k]] < n) break;
            table[free_cells[k]] = 0;
        }
        if (k == free_cells.size()) break;
    }
    return out;
}

MonoidLabeling::MonoidLabeling(LabelList points, std::vector<std::size_t> assignment, std::size_t monoid_size)
    : points_(std::move(points)), assignment_(std::move(assignment)) {
    if (assignment_.size() != points_.size()) {
        throw ShapeMismatch("labeling assigns " + std::to_string(assignment_.size()) + " values to " +
                            std::to_string(points_.size()) + " points");
    }
    for (auto m : assignment_) {
        if (m >= monoid_size) throw IndexOutOfRange("labeling value " + std::to_string(m));
    }
}

std::optional<std::string> find_monoid_violation(const FiniteMonoid& monoid, std::size_t element,
                                                 const FiniteRelation& rel, const MonoidLabeling& labeling) {
    require_same_labels(labeling.points(), rel.src(), "monoid constraint source");
    require_same_labels(labeling.points(), rel.dst(), "monoid constraint target");
    if (element >= monoid.size()) throw IndexOutOfRange("monoid element " + std::to_string(element));
    for (auto [x, y] : rel.pairs()) {
        const std::size_t lhs = monoid.multiply(labeling(y), element);
        bool solvable = false;
        for (std::size_t m2 = 0; m2 < monoid.size() && !solvable; ++m2) {
            solvable = monoid.multiply(m2, labeling(x)) == lhs;
        }
        if (!solvable) {
            return "no m' with f(" + rel.dst()[y] + ")*" + std::to_string(element) + " = m'*f(" + rel.src()[x] + ")";
        }
    }
    return std::nullopt;
}

bool check_monoid_constraint(const FiniteMonoid& monoid, std::size_t element, const FiniteRelation& rel,
                             const MonoidLabeling& labeling) {
    return !find_monoid_violation(monoid, element, rel, labeling).has_value();
}

IndexSet constraint_set(const FiniteMonoid& monoid, const FiniteRelation& rel, const MonoidLabeling& labeling) {
    IndexSet out;
    for (std::size_t m = 0; m < monoid.size(); ++m) {
        if (check_monoid_constraint(monoid, m, rel, labeling)) out.push_back(m);
    }
    return out;
}

}  // namespace compcon
