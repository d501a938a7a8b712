#pragma once

// Block matrices between sector-partitioned spaces and the sectorial
// constraint: a relation between sector labels forbids every nonzero block
// between unrelated sectors.
//
// Bases are grouped by sector. In a product space the sectors are the pairs
// (k, k') ordered row-major, and inside sector (k, k') the basis is (u, v)
// row-major, u a basis index of sector k and v of sector k'. This keeps every
// block of a tensor product contiguous; it differs from the plain Kronecker
// ordering by a fixed permutation.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compcon/matrix.hpp"
#include "compcon/relation.hpp"

namespace compcon {

struct Sector {
    std::string label;
    std::size_t dim = 1;

    friend bool operator==(const Sector&, const Sector&) = default;
};

class SectorSpace {
public:
    SectorSpace() = default;
    explicit SectorSpace(std::vector<Sector> sectors);

    // The tensor unit: one sector "*" of dimension 1.
    static SectorSpace unit();
    static SectorSpace direct_sum(const SectorSpace& a, const SectorSpace& b);
    static SectorSpace product(const SectorSpace& a, const SectorSpace& b);

    const std::vector<Sector>& sectors() const noexcept { return sectors_; }
    std::size_t size() const noexcept { return sectors_.size(); }
    std::size_t total_dim() const noexcept { return total_; }
    std::size_t offset(std::size_t k) const { return offsets_.at(k); }
    std::size_t dim(std::size_t k) const { return sectors_.at(k).dim; }
    const LabelList& labels() const noexcept { return labels_; }

    friend bool operator==(const SectorSpace& a, const SectorSpace& b) { return a.sectors_ == b.sectors_; }

private:
    std::vector<Sector> sectors_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
    LabelList labels_;
};

class BlockMatrix {
public:
    BlockMatrix() = default;
    // entries is cod.total_dim() x dom.total_dim().
    BlockMatrix(SectorSpace dom, SectorSpace cod, Matrix entries);

    static BlockMatrix identity(const SectorSpace& space);
    static BlockMatrix zero(const SectorSpace& dom, const SectorSpace& cod);

    const SectorSpace& dom() const noexcept { return dom_; }
    const SectorSpace& cod() const noexcept { return cod_; }
    const Matrix& entries() const noexcept { return entries_; }

    // Block from dom sector k to cod sector l.
    bool block_is_zero(std::size_t cod_sector, std::size_t dom_sector) const;

    friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

private:
    SectorSpace dom_;
    SectorSpace cod_;
    Matrix entries_;
};

// nullopt when f satisfies rel; otherwise names the first nonzero forbidden
// block. Throws BoundaryMismatch when labels disagree.
std::optional<std::string> find_sectorial_violation(const BlockMatrix& f, const FiniteRelation& rel);
bool check_sectorial(const BlockMatrix& f, const FiniteRelation& rel);

// Second route through the biproduct structure: builds discards as projectors
// and decides d_{rel_k} f = f' d_{k} by explicit matrix products.
bool check_sectorial_via_discard(const BlockMatrix& f, const FiniteRelation& rel);

// The least relation f satisfies: (k, l) iff block (l, k) has a nonzero entry.
FiniteRelation support_relation(const BlockMatrix& f);

BlockMatrix compose(const BlockMatrix& g, const BlockMatrix& f);
BlockMatrix direct_sum(const BlockMatrix& f, const BlockMatrix& g);
BlockMatrix tensor(const BlockMatrix& f, const BlockMatrix& g);
BlockMatrix transpose(const BlockMatrix& f);

// Sum over basis vectors b of A of b (x) b, as a map from the unit space.
BlockMatrix sector_cup(const SectorSpace& space);
BlockMatrix sector_cap(const SectorSpace& space);

// Endomorphism keeping the sectors in `keep` and zeroing the rest
// (sum of i^l p^l over l in keep).
BlockMatrix sector_projector(const SectorSpace& space, const IndexSet& keep);

// Position of basis pair (a, b) inside SectorSpace::product(left, right).
std::vector<std::size_t> product_basis_map(const SectorSpace& left, const SectorSpace& right);

}  // namespace compcon
