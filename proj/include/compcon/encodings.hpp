#pragma once

// The concrete encodings accepted by ConstrainedCategory.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "compcon/constrained.hpp"
#include "compcon/cspcat.hpp"
#include "compcon/funcrel.hpp"
#include "compcon/monoidrel.hpp"
#include "compcon/relation.hpp"
#include "compcon/sectorial.hpp"
#include "compcon/signalling.hpp"

namespace compcon {

// Which monoidal product the sectorial encoding uses.
//   biproduct: direct sum of block matrices over tensor_disjoint;
//   kronecker: tensor product of block matrices over tensor_product, with
//              cups and caps.
enum class SectorTensor { biproduct, kronecker };

class SectorialEncoding {
public:
    using Constraint = FiniteRelation;
    using Morphism = BlockMatrix;
    using Object = SectorSpace;

    explicit SectorialEncoding(SectorTensor mode = SectorTensor::kronecker) : mode_(mode) {}

    SectorTensor mode() const noexcept { return mode_; }
    std::string_view name() const { return "sectorial"; }
    bool supports(Structure s) const {
        return s != Structure::compact || mode_ == SectorTensor::kronecker;
    }

    std::optional<std::string> violation(const Morphism& f, const Constraint& c) const {
        return find_sectorial_violation(f, c);
    }
    Constraint compose_constraints(const Constraint& g, const Constraint& f) const { return compose(g, f); }
    Morphism compose_morphisms(const Morphism& g, const Morphism& f) const { return compose(g, f); }
    Constraint identity_constraint(const Object& a) const { return FiniteRelation::identity(a.labels()); }
    Morphism identity_morphism(const Object& a) const { return BlockMatrix::identity(a); }
    bool leq(const Constraint& a, const Constraint& b) const { return compcon::leq(a, b); }

    Constraint tensor_constraints(const Constraint& a, const Constraint& b) const {
        return mode_ == SectorTensor::kronecker ? tensor_product(a, b) : tensor_disjoint(a, b);
    }
    Morphism tensor_morphisms(const Morphism& f, const Morphism& g) const {
        return mode_ == SectorTensor::kronecker ? tensor(f, g) : direct_sum(f, g);
    }
    Object tensor_objects(const Object& a, const Object& b) const {
        return mode_ == SectorTensor::kronecker ? SectorSpace::product(a, b) : SectorSpace::direct_sum(a, b);
    }
    Object unit() const { return mode_ == SectorTensor::kronecker ? SectorSpace::unit() : SectorSpace(); }

    Constraint dagger_constraint(const Constraint& c) const { return converse(c); }
    Morphism dagger_morphism(const Morphism& f) const { return transpose(f); }

    Constraint cup_constraint(const Object& a) const { return cup(a.labels()); }
    Morphism cup_morphism(const Object& a) const { return sector_cup(a); }
    Constraint cap_constraint(const Object& a) const { return cap(a.labels()); }
    Morphism cap_morphism(const Object& a) const { return sector_cap(a); }

    // Structural isomorphism between two spaces with the same sector
    // dimensions in the same order (unitors, associators).
    Constraint coherence_constraint(const Object& from, const Object& to) const {
        return relabel(FiniteRelation::identity(from.labels()), from.labels(), to.labels());
    }
    Morphism coherence_morphism(const Object& from, const Object& to) const;

private:
    SectorTensor mode_;
};

class SignallingEncoding {
public:
    using Constraint = FiniteRelation;
    using Morphism = StochChannel;
    using Object = FactorSpace;

    std::string_view name() const { return "signalling"; }
    bool supports(Structure s) const { return s == Structure::sequential || s == Structure::tensor; }

    std::optional<std::string> violation(const Morphism& f, const Constraint& c) const {
        return find_signalling_violation(f, c);
    }
    Constraint compose_constraints(const Constraint& g, const Constraint& f) const { return compose(g, f); }
    Morphism compose_morphisms(const Morphism& g, const Morphism& f) const { return compose(g, f); }
    Constraint identity_constraint(const Object& a) const { return FiniteRelation::identity(a.labels()); }
    Morphism identity_morphism(const Object& a) const { return StochChannel::identity(a); }
    bool leq(const Constraint& a, const Constraint& b) const { return compcon::leq(a, b); }

    Constraint tensor_constraints(const Constraint& a, const Constraint& b) const { return tensor_disjoint(a, b); }
    Morphism tensor_morphisms(const Morphism& f, const Morphism& g) const { return tensor(f, g); }
    Object tensor_objects(const Object& a, const Object& b) const { return FactorSpace::concat(a, b); }
};

class FuncRelEncoding {
public:
    using Constraint = FiniteRelation;
    using Morphism = PartitionedFunction;
    using Object = PartitionedFinSet;

    std::string_view name() const { return "funcrel"; }
    bool supports(Structure s) const { return s == Structure::sequential || s == Structure::tensor; }

    std::optional<std::string> violation(const Morphism& f, const Constraint& c) const {
        return find_funcrel_violation(f, c);
    }
    Constraint compose_constraints(const Constraint& g, const Constraint& f) const { return compose(g, f); }
    Morphism compose_morphisms(const Morphism& g, const Morphism& f) const { return compose(g, f); }
    Constraint identity_constraint(const Object& a) const { return FiniteRelation::identity(a.labels()); }
    Morphism identity_morphism(const Object& a) const { return PartitionedFunction::identity(a); }
    bool leq(const Constraint& a, const Constraint& b) const { return compcon::leq(a, b); }

    Constraint tensor_constraints(const Constraint& a, const Constraint& b) const { return tensor_disjoint(a, b); }
    Morphism tensor_morphisms(const Morphism& f, const Morphism& g) const { return tensor(f, g); }
    Object tensor_objects(const Object& a, const Object& b) const { return PartitionedFinSet::concat(a, b); }
};

// A monoid viewed as a one-object category, constrained through a labeling.
// (tau, m) composed after (lambda, n) is (tau . lambda, m * n).
class MonoidEncoding {
public:
    using Constraint = FiniteRelation;
    using Morphism = std::size_t;
    using Object = std::monostate;

    MonoidEncoding(FiniteMonoid monoid, MonoidLabeling labeling)
        : monoid_(std::move(monoid)), labeling_(std::move(labeling)) {}

    const FiniteMonoid& monoid() const noexcept { return monoid_; }
    const MonoidLabeling& labeling() const noexcept { return labeling_; }

    std::string_view name() const { return "monoid"; }
    bool supports(Structure s) const { return s == Structure::sequential; }

    std::optional<std::string> violation(Morphism m, const Constraint& c) const {
        return find_monoid_violation(monoid_, m, c, labeling_);
    }
    Constraint compose_constraints(const Constraint& g, const Constraint& f) const { return compose(g, f); }
    Morphism compose_morphisms(Morphism m, Morphism n) const { return monoid_.multiply(m, n); }
    Constraint identity_constraint(const Object&) const { return FiniteRelation::identity(labeling_.points()); }
    Morphism identity_morphism(const Object&) const { return monoid_.identity(); }
    // Every pair is a condition, so fewer pairs is weaker.
    bool leq(const Constraint& a, const Constraint& b) const { return compcon::leq(b, a); }

private:
    FiniteMonoid monoid_;
    MonoidLabeling labeling_;
};

// A total map between {0..dom-1} and {0..cod-1}; dom is map.size().
struct FinMap {
    std::size_t cod = 0;
    std::vector<std::size_t> map;

    friend bool operator==(const FinMap&, const FinMap&) = default;
};

// Constraints are CSP problems; an identity constraint lists the diagonal for
// the configured arities.
class CSPEncoding {
public:
    using Constraint = CSPProblem;
    using Morphism = FinMap;
    using Object = std::size_t;

    explicit CSPEncoding(std::vector<std::size_t> identity_arities = {1, 2})
        : identity_arities_(std::move(identity_arities)) {}

    std::string_view name() const { return "csp"; }
    bool supports(Structure s) const { return s == Structure::sequential; }

    std::optional<std::string> violation(const Morphism& f, const Constraint& c) const;
    Constraint compose_constraints(const Constraint& g, const Constraint& f) const { return compose_csp(g, f); }
    Morphism compose_morphisms(const Morphism& g, const Morphism& f) const;
    Constraint identity_constraint(const Object& n) const { return CSPProblem::diagonal(n, identity_arities_); }
    Morphism identity_morphism(const Object& n) const;
    // a <= b when b imposes a subset of a's constraints.
    bool leq(const Constraint& a, const Constraint& b) const;

private:
    std::vector<std::size_t> identity_arities_;
};

static_assert(ConstraintEncoding<SectorialEncoding>);
static_assert(ConstraintEncoding<SignallingEncoding>);
static_assert(ConstraintEncoding<FuncRelEncoding>);
static_assert(ConstraintEncoding<MonoidEncoding>);
static_assert(ConstraintEncoding<CSPEncoding>);

}  // namespace compcon
