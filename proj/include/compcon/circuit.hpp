#pragma once

// Circuit files: named declarations, named certified pairs, and a
// composition tree over them.
//
//   {"kind": "circuit",
//    "encoding": "sectorial" | "sectorial-biproduct" | "signalling" | "funcrel" | "monoid" | "csp",
//    "monoid": "M", "labeling": "L",              (monoid encoding only)
//    "declarations": {"name": object, ...},
//    "pairs": {"p": {"constraint": "tau", "morphism": "f"}, ...},
//    "circuit": node}
//
// A declaration is any io object, or one of
//   {"kind": "relation_op", "op": "compose" | "meet" | "converse" | "tensor_disjoint" | "tensor_product",
//    "args": ["a", "b", ...]}                  compose runs left to right
//   {"kind": "builtin", "name": "parity"}
//   {"kind": "builtin", "name": "identity" | "identity_relation" | "cup" | "cap" | "sector_cup" | "sector_cap",
//    "of": "space"}
//   {"kind": "builtin", "name": "full" | "empty", "src": "space", "dst": "space"}
// Names may refer to declarations anywhere in the file.
//
// A node is a pair name, or {"seq": [n1, n2, ...]} (n1 first), {"par": [...]},
// {"dagger": n}, {"relax": n, "to": "constraint"}, {"identity": "space"},
// {"cup": "space"}, {"cap": "space"}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "compcon/io.hpp"

namespace compcon {

struct CircuitNode {
    enum class Op { pair, seq, par, dagger, relax, identity, cup, cap };

    Op op = Op::pair;
    // Pair name, relax target or object name, depending on op.
    std::string name;
    std::vector<CircuitNode> children;
    // Location in the file, e.g. "circuit.seq[1].par[0]".
    std::string path;
};

struct PairDecl {
    std::string constraint;
    std::string morphism;
};

struct CircuitDescription {
    std::string encoding;
    std::map<std::string, io::Value> objects;
    std::map<std::string, PairDecl> pairs;
    CircuitNode root;
    std::string monoid;
    std::string labeling;
};

// Resolves every declaration; throws ParseError, TypeCheckError or the
// library's validation errors.
CircuitDescription parse_circuit(const io::Json& j);

struct CircuitReport {
    bool satisfied = false;
    // First failure: node path, pair, and the violation found there.
    std::string witness;
    std::string witness_path;
    // Composite constraint and morphism, when satisfied.
    std::optional<io::Value> constraint;
    std::optional<io::Value> morphism;
    // One line per verified leaf.
    std::vector<std::string> leaves;
};

// Type-checks the whole tree (TypeCheckError, nothing evaluated), then
// verifies every leaf pair and evaluates the tree with certificate
// re-checking on.
CircuitReport check_circuit(const CircuitDescription& c);

// Type-check only.
void typecheck_circuit(const CircuitDescription& c);

}  // namespace compcon
