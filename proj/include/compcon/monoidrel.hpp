#pragma once

// Relational constraints on a finite monoid M through a labeling f : S -> M.
// An element m satisfies an endorelation tau on S when every x ~ y admits some
// m' with f(y) * m == m' * f(x). Products are read left to right:
// table[a][b] is a * b.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compcon/relation.hpp"

namespace compcon {

class FiniteMonoid {
public:
    FiniteMonoid() = default;
    // table is size x size, row-major; validated for closure, identity laws
    // and associativity (exhaustively).
    FiniteMonoid(std::size_t size, std::vector<std::size_t> table, std::size_t identity);

    static FiniteMonoid cyclic_group(std::size_t order);

    std::size_t size() const noexcept { return size_; }
    std::size_t identity() const noexcept { return identity_; }
    const std::vector<std::size_t>& table() const noexcept { return table_; }
    std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * size_ + b]; }
    bool is_group() const;

    friend bool operator==(const FiniteMonoid&, const FiniteMonoid&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::size_t> table_;
    std::size_t identity_ = 0;
};

// Every monoid of the given order up to isomorphism, identity at index 0.
std::vector<FiniteMonoid> enumerate_monoids(std::size_t order);

class MonoidLabeling {
public:
    MonoidLabeling() = default;
    MonoidLabeling(LabelList points, std::vector<std::size_t> assignment, std::size_t monoid_size);

    const LabelList& points() const noexcept { return points_; }
    const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
    std::size_t operator()(std::size_t x) const { return assignment_.at(x); }

    friend bool operator==(const MonoidLabeling&, const MonoidLabeling&) = default;

private:
    LabelList points_;
    std::vector<std::size_t> assignment_;
};

std::optional<std::string> find_monoid_violation(const FiniteMonoid& monoid, std::size_t element,
                                                 const FiniteRelation& rel, const MonoidLabeling& labeling);
bool check_monoid_constraint(const FiniteMonoid& monoid, std::size_t element, const FiniteRelation& rel,
                             const MonoidLabeling& labeling);

// L(rel): all elements satisfying rel, ascending.
IndexSet constraint_set(const FiniteMonoid& monoid, const FiniteRelation& rel, const MonoidLabeling& labeling);

}  // namespace compcon
