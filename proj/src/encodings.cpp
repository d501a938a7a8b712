#include "compcon/encodings.hpp"

#include <algorithm>
#include <numeric>

#include "compcon/error.hpp"

namespace compcon {

SectorialEncoding::Morphism SectorialEncoding::coherence_morphism(const Object& from, const Object& to) const {
    if (from.size() != to.size()) throw BoundaryMismatch("coherence map between spaces of different sector counts");
    for (std::size_t k = 0; k < from.size(); ++k) {
        if (from.dim(k) != to.dim(k)) {
            throw BoundaryMismatch("coherence map: sector " + from.sectors()[k].label + " and " +
                                   to.sectors()[k].label + " differ in dimension");
        }
    }
    return BlockMatrix(from, to, Matrix::identity(from.total_dim()));
}

std::optional<std::string> CSPEncoding::violation(const Morphism& f, const Constraint& c) const {
    if (f.cod != c.cod_size()) {
        throw BoundaryMismatch("csp: map into " + std::to_string(f.cod) + " values, problem expects " +
                               std::to_string(c.cod_size()));
    }
    return find_csp_violation(f.map, c);
}

CSPEncoding::Morphism CSPEncoding::compose_morphisms(const Morphism& g, const Morphism& f) const {
    if (f.cod != g.map.size()) {
        throw BoundaryMismatch("map compose: " + std::to_string(f.cod) + " vs " + std::to_string(g.map.size()));
    }
    return FinMap{g.cod, compose_maps(g.map, f.map)};
}

CSPEncoding::Morphism CSPEncoding::identity_morphism(const Object& n) const {
    FinMap out{n, std::vector<std::size_t>(n)};
    std::iota(out.map.begin(), out.map.end(), std::size_t{0});
    return out;
}

bool CSPEncoding::leq(const Constraint& a, const Constraint& b) const {
    if (a.dom_size() != b.dom_size() || a.cod_size() != b.cod_size()) {
        throw BoundaryMismatch("csp relaxation between problems on different sets");
    }
    return std::includes(a.constraints().begin(), a.constraints().end(), b.constraints().begin(),
                         b.constraints().end());
}

}  // namespace compcon
