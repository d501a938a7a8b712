#pragma once

// Constrained categories: morphisms travel together with a constraint they
// satisfy, and every operation acts component-wise.
//
// An encoding is a value type describing one concrete instance (which
// constraints, which morphisms, what satisfaction means). ConstrainedCategory
// wraps it and hands out ConstrainedMorphism values. Only pair() and the
// structural operations create certified values; certificates produced by
// compose/tensor/dagger/relax are inherited from their inputs (laxity,
// monotonicity) and, with re-checking on, verified again from scratch.

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "compcon/error.hpp"

namespace compcon {

enum class Structure : unsigned {
    sequential = 1u << 0,
    tensor = 1u << 1,
    dagger = 1u << 2,
    compact = 1u << 3,
};

// clang-format off
template <class E>
concept ConstraintEncoding = requires(const E& enc, const typename E::Constraint& c,
                                      const typename E::Morphism& m, const typename E::Object& o) {
    typename E::Constraint;
    typename E::Morphism;
    typename E::Object;
    { enc.name() } -> std::convertible_to<std::string_view>;
    { enc.supports(Structure::tensor) } -> std::same_as<bool>;
    { enc.violation(m, c) } -> std::same_as<std::optional<std::string>>;
    { enc.compose_constraints(c, c) } -> std::same_as<typename E::Constraint>;
    { enc.compose_morphisms(m, m) } -> std::same_as<typename E::Morphism>;
    { enc.identity_constraint(o) } -> std::same_as<typename E::Constraint>;
    { enc.identity_morphism(o) } -> std::same_as<typename E::Morphism>;
    { enc.leq(c, c) } -> std::same_as<bool>;
};
// clang-format on

template <ConstraintEncoding E>
class ConstrainedCategory;

template <ConstraintEncoding E>
class ConstrainedMorphism {
public:
    using Constraint = typename E::Constraint;
    using Morphism = typename E::Morphism;

    const Constraint& constraint() const noexcept { return constraint_; }
    const Morphism& morphism() const noexcept { return morphism_; }
    bool certified() const noexcept { return certified_; }
    bool unchecked() const noexcept { return !certified_; }

    // Equality of the underlying pair; certificates are not compared.
    friend bool operator==(const ConstrainedMorphism& a, const ConstrainedMorphism& b) {
        return a.constraint_ == b.constraint_ && a.morphism_ == b.morphism_;
    }

private:
    friend class ConstrainedCategory<E>;

    ConstrainedMorphism(Constraint c, Morphism m, bool certified)
        : constraint_(std::move(c)), morphism_(std::move(m)), certified_(certified) {}

    Constraint constraint_;
    Morphism morphism_;
    bool certified_ = false;
};

#ifdef NDEBUG
inline constexpr bool default_recheck = false;
#else
inline constexpr bool default_recheck = true;
#endif

template <ConstraintEncoding E>
class ConstrainedCategory {
public:
    using Pair = ConstrainedMorphism<E>;
    using Constraint = typename E::Constraint;
    using Morphism = typename E::Morphism;
    using Object = typename E::Object;

    explicit ConstrainedCategory(E encoding, bool recheck = default_recheck)
        : encoding_(std::move(encoding)), recheck_(recheck) {}

    const E& encoding() const noexcept { return encoding_; }
    bool rechecking() const noexcept { return recheck_; }

    // Certified pair, or UnsatisfiedConstraint carrying the violation found.
    Pair pair(Constraint c, Morphism m) const {
        if (auto witness = encoding_.violation(m, c)) throw UnsatisfiedConstraint(*witness);
        return Pair(std::move(c), std::move(m), true);
    }

    // For oracles only. The result is marked and rejected by every operation.
    Pair pair_unchecked(Constraint c, Morphism m) const { return Pair(std::move(c), std::move(m), false); }

    Pair identity(const Object& object) const {
        return Pair(encoding_.identity_constraint(object), encoding_.identity_morphism(object), true);
    }

    // second ∘ first
    Pair compose(const Pair& second, const Pair& first) const {
        require_certified(second, "compose");
        require_certified(first, "compose");
        return inherited(encoding_.compose_constraints(second.constraint(), first.constraint()),
                         encoding_.compose_morphisms(second.morphism(), first.morphism()), "compose");
    }

    Pair tensor(const Pair& left, const Pair& right) const
        requires requires(const E& e, const Constraint& c, const Morphism& m) {
            e.tensor_constraints(c, c);
            e.tensor_morphisms(m, m);
        }
    {
        require_structure(Structure::tensor, "tensor");
        require_certified(left, "tensor");
        require_certified(right, "tensor");
        return inherited(encoding_.tensor_constraints(left.constraint(), right.constraint()),
                         encoding_.tensor_morphisms(left.morphism(), right.morphism()), "tensor");
    }

    Pair dagger(const Pair& p) const
        requires requires(const E& e, const Constraint& c, const Morphism& m) {
            e.dagger_constraint(c);
            e.dagger_morphism(m);
        }
    {
        require_structure(Structure::dagger, "dagger");
        require_certified(p, "dagger");
        return inherited(encoding_.dagger_constraint(p.constraint()), encoding_.dagger_morphism(p.morphism()),
                         "dagger");
    }

    Pair cup(const Object& object) const
        requires requires(const E& e, const Object& o) {
            e.cup_constraint(o);
            e.cup_morphism(o);
        }
    {
        require_structure(Structure::compact, "cup");
        return inherited(encoding_.cup_constraint(object), encoding_.cup_morphism(object), "cup");
    }

    Pair cap(const Object& object) const
        requires requires(const E& e, const Object& o) {
            e.cap_constraint(o);
            e.cap_morphism(o);
        }
    {
        require_structure(Structure::compact, "cap");
        return inherited(encoding_.cap_constraint(object), encoding_.cap_morphism(object), "cap");
    }

    // Same morphism under a weaker constraint.
    Pair relax(const Pair& p, Constraint weaker) const {
        require_certified(p, "relax");
        if (!encoding_.leq(p.constraint(), weaker)) throw NotARelaxation("target constraint is not weaker");
        return inherited(std::move(weaker), p.morphism(), "relax");
    }

    // From-scratch evaluation of the satisfaction predicate.
    bool holds(const Pair& p) const { return !encoding_.violation(p.morphism(), p.constraint()).has_value(); }

private:
    Pair inherited(Constraint c, Morphism m, const char* op) const {
        if (recheck_) {
            if (auto witness = encoding_.violation(m, c)) {
                throw LaxityViolation(std::string(encoding_.name()) + " " + op +
                                      " produced an unsatisfied pair: " + *witness);
            }
        }
        return Pair(std::move(c), std::move(m), true);
    }

    void require_certified(const Pair& p, const char* op) const {
        if (!p.certified()) throw PreconditionViolated(std::string(op) + " refuses an unchecked pair");
    }

    void require_structure(Structure s, const char* op) const {
        if (!encoding_.supports(s)) {
            throw UnsupportedStructure(std::string(encoding_.name()) + " encoding does not support " + op);
        }
    }

    E encoding_;
    bool recheck_;
};

}  // namespace compcon
