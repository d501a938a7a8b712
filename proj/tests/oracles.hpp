#pragma once

// Brute-force reference implementations. Each one works from the definitions
// on raw index data and shares no code path with the library function it is
// compared against.

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "compcon/rational.hpp"
#include "compcon/relation.hpp"
#include "compcon/sectorial.hpp"
#include "compcon/signalling.hpp"

namespace oracle {

using PairSet = std::set<std::pair<std::size_t, std::size_t>>;

inline PairSet pairs_of(const compcon::FiniteRelation& r) {
    PairSet out;
    for (std::size_t i = 0; i < r.src().size(); ++i) {
        for (std::size_t j = 0; j < r.dst().size(); ++j) {
            if (r.contains(i, j)) out.insert({i, j});
        }
    }
    return out;
}

// Connected paths through the middle list.
inline PairSet compose(const PairSet& second, const PairSet& first) {
    PairSet out;
    for (auto [i, j] : first) {
        for (auto [j2, k] : second) {
            if (j == j2) out.insert({i, k});
        }
    }
    return out;
}

// Sector of a flat basis index, found by walking the dimensions.
inline std::size_t sector_of(const compcon::SectorSpace& space, std::size_t index) {
    std::size_t acc = 0;
    for (std::size_t k = 0; k < space.sectors().size(); ++k) {
        acc += space.sectors()[k].dim;
        if (index < acc) return k;
    }
    return space.sectors().size();
}

// Entry-by-entry scan: every nonzero entry must connect related sectors.
inline bool sectorial(const compcon::BlockMatrix& f, const compcon::FiniteRelation& rel) {
    for (std::size_t r = 0; r < f.entries().rows(); ++r) {
        for (std::size_t c = 0; c < f.entries().cols(); ++c) {
            if (f.entries()(r, c).is_zero()) continue;
            if (!rel.contains(sector_of(f.dom(), c), sector_of(f.cod(), r))) return false;
        }
    }
    return true;
}

inline PairSet support(const compcon::BlockMatrix& f) {
    PairSet out;
    for (std::size_t r = 0; r < f.entries().rows(); ++r) {
        for (std::size_t c = 0; c < f.entries().cols(); ++c) {
            if (!f.entries()(r, c).is_zero()) out.insert({sector_of(f.dom(), c), sector_of(f.cod(), r)});
        }
    }
    return out;
}

// Mixed-radix digits, first factor most significant.
inline std::vector<std::size_t> digits(const std::vector<std::size_t>& cards, std::size_t index) {
    std::vector<std::size_t> out(cards.size());
    for (std::size_t k = cards.size(); k-- > 0;) {
        out[k] = index % cards[k];
        index /= cards[k];
    }
    return out;
}

inline std::vector<std::size_t> cards_of(const compcon::FactorSpace& s) {
    std::vector<std::size_t> out;
    for (const auto& f : s.factors()) out.push_back(f.card);
    return out;
}

// Distribution of the outputs in `keep` for the input column `col`, as a map
// from kept digits to probability.
inline std::map<std::vector<std::size_t>, compcon::Rational> marginal(const compcon::StochChannel& f,
                                                                     std::size_t col,
                                                                     const std::vector<std::size_t>& keep) {
    std::map<std::vector<std::size_t>, compcon::Rational> out;
    const auto cards = cards_of(f.cod());
    for (std::size_t r = 0; r < f.cod().total(); ++r) {
        const auto d = digits(cards, r);
        std::vector<std::size_t> key;
        for (auto k : keep) key.push_back(d[k]);
        out[key] += f.matrix()(r, col);
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

// Outputs in `keep` must have the same distribution for any two inputs that
// agree outside the factors in `varied`.
inline bool independent_of(const compcon::StochChannel& f, const std::vector<std::size_t>& keep,
                           const std::set<std::size_t>& varied) {
    const auto cards = cards_of(f.dom());
    for (std::size_t a = 0; a < f.dom().total(); ++a) {
        for (std::size_t b = a + 1; b < f.dom().total(); ++b) {
            const auto da = digits(cards, a);
            const auto db = digits(cards, b);
            bool agree = true;
            for (std::size_t k = 0; k < cards.size(); ++k) {
                if (!varied.contains(k) && da[k] != db[k]) agree = false;
            }
            if (agree && marginal(f, a, keep) != marginal(f, b, keep)) return false;
        }
    }
    return true;
}

inline bool signalling(const compcon::StochChannel& f, const compcon::FiniteRelation& rel) {
    for (std::size_t i = 0; i < f.dom().size(); ++i) {
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < f.cod().size(); ++j) {
            if (!rel.contains(i, j)) keep.push_back(j);
        }
        if (!independent_of(f, keep, {i})) return false;
    }
    return true;
}

inline bool signalling_atomic(const compcon::StochChannel& f, const compcon::FiniteRelation& rel) {
    for (std::size_t i = 0; i < f.dom().size(); ++i) {
        for (std::size_t j = 0; j < f.cod().size(); ++j) {
            if (!rel.contains(i, j) && !independent_of(f, {j}, {i})) return false;
        }
    }
    return true;
}

}  // namespace oracle
