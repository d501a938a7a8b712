#pragma once

// Constraint satisfaction problems as morphisms between finite sets: a problem
// V -> D is a set of constraints (k, scope in V^k, allowed subset of D^k), and
// f : V -> D satisfies it when every scope maps into its allowed set.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace compcon {

using Tuple = std::vector<std::size_t>;

struct CSPConstraint {
    Tuple scope;
    std::set<Tuple> allowed;

    std::size_t arity() const noexcept { return scope.size(); }

    friend bool operator==(const CSPConstraint&, const CSPConstraint&) = default;
    friend auto operator<=>(const CSPConstraint&, const CSPConstraint&) = default;
};

class CSPProblem {
public:
    CSPProblem() = default;
    // Validates arities (>= 1, allowed tuples match the scope) and ranges.
    CSPProblem(std::size_t dom_size, std::size_t cod_size, std::set<CSPConstraint> constraints);

    // Every scope of every arity in `arities`, each allowing everything.
    static CSPProblem total(std::size_t dom_size, std::size_t cod_size, const std::vector<std::size_t>& arities);
    // (k, a, {a}) for every tuple a of every arity in `arities`; satisfied by the identity.
    static CSPProblem diagonal(std::size_t size, const std::vector<std::size_t>& arities);

    std::size_t dom_size() const noexcept { return dom_; }
    std::size_t cod_size() const noexcept { return cod_; }
    const std::set<CSPConstraint>& constraints() const noexcept { return constraints_; }

    friend bool operator==(const CSPProblem&, const CSPProblem&) = default;

private:
    std::size_t dom_ = 0;
    std::size_t cod_ = 0;
    std::set<CSPConstraint> constraints_;
};

// f is a total map dom -> cod given as its image list.
std::optional<std::string> find_csp_violation(const std::vector<std::size_t>& f, const CSPProblem& problem);
bool satisfies(const std::vector<std::size_t>& f, const CSPProblem& problem);

struct CSPComposition {
    CSPProblem problem;
    // (first, second) constraint pairs never compared because their arities differ.
    std::size_t skipped_arity_pairs = 0;
};

// second . first: (k, a, s) belongs to the result iff some (k, a, r) in first
// has, for every tuple m in r, a constraint (k, m, s) in second. Candidate
// bodies s are the allowed sets listed in second.
CSPComposition compose_csp_report(const CSPProblem& second, const CSPProblem& first);
CSPProblem compose_csp(const CSPProblem& second, const CSPProblem& first);

std::vector<std::size_t> compose_maps(const std::vector<std::size_t>& g, const std::vector<std::size_t>& f);

}  // namespace compcon
