#include "compcon/sectorial.hpp"

#include "compcon/error.hpp"

namespace compcon {

SectorSpace::SectorSpace(std::vector<Sector> sectors) : sectors_(std::move(sectors)) {
    std::vector<std::string> names;
    names.reserve(sectors_.size());
    for (const auto& s : sectors_) {
        if (s.dim == 0) throw InvalidValue("sector '" + s.label + "' has dimension 0");
        offsets_.push_back(total_);
        total_ += s.dim;
        names.push_back(s.label);
    }
    labels_ = LabelList(std::move(names));
}

SectorSpace SectorSpace::unit() { return SectorSpace({Sector{"*", 1}}); }

SectorSpace SectorSpace::direct_sum(const SectorSpace& a, const SectorSpace& b) {
    auto sectors = a.sectors_;
    sectors.insert(sectors.end(), b.sectors_.begin(), b.sectors_.end());
    return SectorSpace(std::move(sectors));
}

SectorSpace SectorSpace::product(const SectorSpace& a, const SectorSpace& b) {
    std::vector<Sector> sectors;
    for (const auto& x : a.sectors_) {
        for (const auto& y : b.sectors_) sectors.push_back({"(" + x.label + "," + y.label + ")", x.dim * y.dim});
    }
    return SectorSpace(std::move(sectors));
}

BlockMatrix::BlockMatrix(SectorSpace dom, SectorSpace cod, Matrix entries)
    : dom_(std::move(dom)), cod_(std::move(cod)), entries_(std::move(entries)) {
    if (entries_.rows() != cod_.total_dim() || entries_.cols() != dom_.total_dim()) {
        throw ShapeMismatch("block matrix entries are " + std::to_string(entries_.rows()) + "x" +
                            std::to_string(entries_.cols()) + ", spaces need " + std::to_string(cod_.total_dim()) +
                            "x" + std::to_string(dom_.total_dim()));
    }
}

BlockMatrix BlockMatrix::identity(const SectorSpace& space) {
    return BlockMatrix(space, space, Matrix::identity(space.total_dim()));
}

BlockMatrix BlockMatrix::zero(const SectorSpace& dom, const SectorSpace& cod) {
    return BlockMatrix(dom, cod, Matrix(cod.total_dim(), dom.total_dim()));
}

bool BlockMatrix::block_is_zero(std::size_t l, std::size_t k) const {
    const std::size_t r0 = cod_.offset(l);
    const std::size_t c0 = dom_.offset(k);
    for (std::size_t r = r0; r < r0 + cod_.dim(l); ++r) {
        for (std::size_t c = c0; c < c0 + dom_.dim(k); ++c) {
            if (!entries_(r, c).is_zero()) return false;
        }
    }
    return true;
}

namespace {

void require_boundary(const BlockMatrix& f, const FiniteRelation& rel) {
    require_same_labels(f.dom().labels(), rel.src(), "sectorial constraint source");
    require_same_labels(f.cod().labels(), rel.dst(), "sectorial constraint target");
}

}  // namespace

std::optional<std::string> find_sectorial_violation(const BlockMatrix& f, const FiniteRelation& rel) {
    require_boundary(f, rel);
    for (std::size_t k = 0; k < f.dom().size(); ++k) {
        for (std::size_t l = 0; l < f.cod().size(); ++l) {
            if (!rel.contains(k, l) && !f.block_is_zero(l, k)) {
                return "nonzero block from sector " + f.dom().sectors()[k].label + " to sector " +
                       f.cod().sectors()[l].label;
            }
        }
    }
    return std::nullopt;
}

bool check_sectorial(const BlockMatrix& f, const FiniteRelation& rel) {
    return !find_sectorial_violation(f, rel).has_value();
}

BlockMatrix sector_projector(const SectorSpace& space, const IndexSet& keep) {
    Matrix m(space.total_dim(), space.total_dim());
    for (auto k : keep) {
        if (k >= space.size()) throw IndexOutOfRange("sector index " + std::to_string(k));
        for (std::size_t u = 0; u < space.dim(k); ++u) m(space.offset(k) + u, space.offset(k) + u) = 1;
    }
    return BlockMatrix(space, space, std::move(m));
}

bool check_sectorial_via_discard(const BlockMatrix& f, const FiniteRelation& rel) {
    require_boundary(f, rel);
    for (std::size_t k = 0; k < f.dom().size(); ++k) {
        const auto related = related_set(rel, k);
        IndexSet kept_outputs;
        for (std::size_t l = 0, r = 0; l < f.cod().size(); ++l) {
            if (r < related.size() && related[r] == l) {
                ++r;
            } else {
                kept_outputs.push_back(l);
            }
        }
        IndexSet other_inputs;
        for (std::size_t k2 = 0; k2 < f.dom().size(); ++k2) {
            if (k2 != k) other_inputs.push_back(k2);
        }
        const auto discarded = compose(sector_projector(f.cod(), kept_outputs), f);
        const auto reprepared = compose(discarded, sector_projector(f.dom(), other_inputs));
        if (!(discarded == reprepared)) return false;
    }
    return true;
}

FiniteRelation support_relation(const BlockMatrix& f) {
    std::vector<FiniteRelation::Pair> pairs;
    for (std::size_t k = 0; k < f.dom().size(); ++k) {
        for (std::size_t l = 0; l < f.cod().size(); ++l) {
            if (!f.block_is_zero(l, k)) pairs.emplace_back(k, l);
        }
    }
    return FiniteRelation(f.dom().labels(), f.cod().labels(), pairs);
}

BlockMatrix compose(const BlockMatrix& g, const BlockMatrix& f) {
    if (!(f.cod() == g.dom())) {
        throw BoundaryMismatch("block matrix compose: " + f.cod().labels().to_string() + " vs " +
                               g.dom().labels().to_string());
    }
    return BlockMatrix(f.dom(), g.cod(), multiply(g.entries(), f.entries()));
}

BlockMatrix direct_sum(const BlockMatrix& f, const BlockMatrix& g) {
    auto dom = SectorSpace::direct_sum(f.dom(), g.dom());
    auto cod = SectorSpace::direct_sum(f.cod(), g.cod());
    Matrix m(cod.total_dim(), dom.total_dim());
    const auto& a = f.entries();
    const auto& b = g.entries();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
    }
    return BlockMatrix(std::move(dom), std::move(cod), std::move(m));
}

std::vector<std::size_t> product_basis_map(const SectorSpace& left, const SectorSpace& right) {
    // Plain index a * |right| + b  ->  sector-grouped index in the product.
    std::vector<std::size_t> map(left.total_dim() * right.total_dim());
    std::size_t offset = 0;
    for (std::size_t k = 0; k < left.size(); ++k) {
        for (std::size_t k2 = 0; k2 < right.size(); ++k2) {
            for (std::size_t u = 0; u < left.dim(k); ++u) {
                for (std::size_t v = 0; v < right.dim(k2); ++v) {
                    const std::size_t a = left.offset(k) + u;
                    const std::size_t b = right.offset(k2) + v;
                    map[a * right.total_dim() + b] = offset + u * right.dim(k2) + v;
                }
            }
            offset += left.dim(k) * right.dim(k2);
        }
    }
    return map;
}

BlockMatrix tensor(const BlockMatrix& f, const BlockMatrix& g) {
    auto dom = SectorSpace::product(f.dom(), g.dom());
    auto cod = SectorSpace::product(f.cod(), g.cod());
    const auto row_map = product_basis_map(f.cod(), g.cod());
    const auto col_map = product_basis_map(f.dom(), g.dom());
    const Matrix plain = kronecker(f.entries(), g.entries());
    Matrix m(cod.total_dim(), dom.total_dim());
    for (std::size_t r = 0; r < plain.rows(); ++r) {
        for (std::size_t c = 0; c < plain.cols(); ++c) m(row_map[r], col_map[c]) = plain(r, c);
    }
    return BlockMatrix(std::move(dom), std::move(cod), std::move(m));
}

BlockMatrix transpose(const BlockMatrix& f) { return BlockMatrix(f.cod(), f.dom(), f.entries().transpose()); }

BlockMatrix sector_cup(const SectorSpace& space) {
    auto cod = SectorSpace::product(space, space);
    const auto map = product_basis_map(space, space);
    Matrix m(cod.total_dim(), 1);
    for (std::size_t b = 0; b < space.total_dim(); ++b) m(map[b * space.total_dim() + b], 0) = 1;
    return BlockMatrix(SectorSpace::unit(), std::move(cod), std::move(m));
}

BlockMatrix sector_cap(const SectorSpace& space) { return transpose(sector_cup(space)); }

}  // namespace compcon
