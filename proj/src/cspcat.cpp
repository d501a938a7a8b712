#include "compcon/cspcat.hpp"

#include <map>

#include "compcon/error.hpp"

namespace compcon {

namespace {

void check_tuple(const Tuple& t, std::size_t size, const char* what) {
    for (auto v : t) {
        if (v >= size) throw IndexOutOfRange(std::string(what) + " entry " + std::to_string(v) + " out of range");
    }
}

void all_tuples(std::size_t size, std::size_t arity, Tuple& prefix, std::vector<Tuple>& out) {
    if (prefix.size() == arity) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t v = 0; v < size; ++v) {
        prefix.push_back(v);
        all_tuples(size, arity, prefix, out);
        prefix.pop_back();
    }
}

std::vector<Tuple> all_tuples(std::size_t size, std::size_t arity) {
    std::vector<Tuple> out;
    Tuple prefix;
    all_tuples(size, arity, prefix, out);
    return out;
}

}  // namespace

CSPProblem::CSPProblem(std::size_t dom_size, std::size_t cod_size, std::set<CSPConstraint> constraints)
    : dom_(dom_size), cod_(cod_size), constraints_(std::move(constraints)) {
    for (const auto& c : constraints_) {
        if (c.arity() == 0) throw InvalidValue("constraint arity must be at least 1");
        check_tuple(c.scope, dom_, "scope");
        for (const auto& t : c.allowed) {
            if (t.size() != c.arity()) throw InvalidValue("allowed tuple arity differs from scope arity");
            check_tuple(t, cod_, "allowed tuple");
        }
    }
}

CSPProblem CSPProblem::total(std::size_t dom_size, std::size_t cod_size, const std::vector<std::size_t>& arities) {
    std::set<CSPConstraint> constraints;
    for (auto k : arities) {
        const auto everything = all_tuples(cod_size, k);
        const std::set<Tuple> allowed(everything.begin(), everything.end());
        for (auto& scope : all_tuples(dom_size, k)) constraints.insert({std::move(scope), allowed});
    }
    return CSPProblem(dom_size, cod_size, std::move(constraints));
}

CSPProblem CSPProblem::diagonal(std::size_t size, const std::vector<std::size_t>& arities) {
    std::set<CSPConstraint> constraints;
    for (auto k : arities) {
        for (auto& scope : all_tuples(size, k)) {
            std::set<Tuple> allowed{scope};
            constraints.insert({std::move(scope), std::move(allowed)});
        }
    }
    return CSPProblem(size, size, std::move(constraints));
}

std::optional<std::string> find_csp_violation(const std::vector<std::size_t>& f, const CSPProblem& problem) {
    if (f.size() != problem.dom_size()) {
        throw ShapeMismatch("assignment covers " + std::to_string(f.size()) + " of " +
                            std::to_string(problem.dom_size()) + " variables");
    }
    check_tuple(f, problem.cod_size(), "assignment");
    for (const auto& c : problem.constraints()) {
        Tuple image;
        image.reserve(c.arity());
        for (auto v : c.scope) image.push_back(f[v]);
        if (!c.allowed.contains(image)) {
            std::string scope;
            for (auto v : c.scope) scope += (scope.empty() ? "" : ",") + std::to_string(v);
            return "scope (" + scope + ") leaves its allowed set";
        }
    }
    return std::nullopt;
}

bool satisfies(const std::vector<std::size_t>& f, const CSPProblem& problem) {
    return !find_csp_violation(f, problem).has_value();
}

CSPComposition compose_csp_report(const CSPProblem& second, const CSPProblem& first) {
    if (first.cod_size() != second.dom_size()) {
        throw BoundaryMismatch("csp compose: first has codomain " + std::to_string(first.cod_size()) +
                               ", second has domain " + std::to_string(second.dom_size()));
    }
    // Scopes of `second` grouped by (arity, allowed body).
    std::map<std::pair<std::size_t, std::set<Tuple>>, std::set<Tuple>> scopes_by_body;
    for (const auto& c : second.constraints()) scopes_by_body[{c.arity(), c.allowed}].insert(c.scope);

    CSPComposition out;
    std::set<CSPConstraint> composed;
    for (const auto& c1 : first.constraints()) {
        for (const auto& c2 : second.constraints()) {
            if (c2.arity() != c1.arity()) ++out.skipped_arity_pairs;
        }
        for (const auto& [key, scopes] : scopes_by_body) {
            if (key.first != c1.arity()) continue;
            bool covered = true;
            for (const auto& m : c1.allowed) {
                if (!scopes.contains(m)) {
                    covered = false;
                    break;
                }
            }
            if (covered) composed.insert({c1.scope, key.second});
        }
    }
    out.problem = CSPProblem(first.dom_size(), second.cod_size(), std::move(composed));
    return out;
}

CSPProblem compose_csp(const CSPProblem& second, const CSPProblem& first) {
    return compose_csp_report(second, first).problem;
}

std::vector<std::size_t> compose_maps(const std::vector<std::size_t>& g, const std::vector<std::size_t>& f) {
    std::vector<std::size_t> out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = g.at(f[x]);
    return out;
}

}  // namespace compcon
