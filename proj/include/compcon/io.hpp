#pragma once

// Textual container format. Every object is a JSON value with a "kind" tag;
// indices are zero-based and rationals are "p/q" strings.
//
//   relation      {"kind":"relation","src":[..],"dst":[..],"pairs":[[i,j],..]}
//   sector_space  {"kind":"sector_space","sectors":[["a",2],..]}
//   factor_space  {"kind":"factor_space","factors":[["x",2],..]}
//   partitioned_set {"kind":"partitioned_set","blocks":[["a",2],..]}
//   finite_set    {"kind":"finite_set","size":n}
//   block_matrix  {"kind":"block_matrix","dom":[sectors],"cod":[sectors],"entries":["p/q",..]}
//   channel       {"kind":"channel","dom":[factors],"cod":[factors],"entries":["p/q",..]}
//   function      {"kind":"function","dom":[blocks],"cod":[blocks],"map":[..]}
//   fin_map       {"kind":"fin_map","cod":n,"map":[..]}
//   monoid        {"kind":"monoid","size":n,"table":[..],"identity":e}
//   labeling      {"kind":"labeling","points":[..],"assignment":[..],"monoid_size":n}
//   monoid_element {"kind":"monoid_element","value":m}
//   csp           {"kind":"csp","dom":n,"cod":m,"constraints":[{"scope":[..],"allowed":[[..],..]},..]}
//
// Matrices are dense and row-major, cod rows by dom columns. A relation
// without a "kind" is accepted as a relation.

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"

#include "compcon/cspcat.hpp"
#include "compcon/encodings.hpp"
#include "compcon/funcrel.hpp"
#include "compcon/monoidrel.hpp"
#include "compcon/relation.hpp"
#include "compcon/sectorial.hpp"
#include "compcon/signalling.hpp"

namespace compcon::io {

using Json = nlohmann::ordered_json;

struct FiniteSet {
    std::size_t size = 0;

    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};

struct MonoidElement {
    std::size_t value = 0;

    friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
};

using Value = std::variant<FiniteRelation, SectorSpace, FactorSpace, PartitionedFinSet, FiniteSet, BlockMatrix,
                           StochChannel, PartitionedFunction, FinMap, FiniteMonoid, MonoidLabeling, MonoidElement,
                           CSPProblem>;

// Kind tag of a value, as written in files.
std::string kind_of(const Value& v);

Json to_json(const Value& v);
// Throws ParseError on malformed input and the library's validation errors
// (InvalidValue, BoundaryMismatch, ...) on well-formed but invalid objects.
Value from_json(const Json& j);

template <class T>
T from_json_as(const Json& j) {
    auto v = from_json(j);
    if (auto* p = std::get_if<T>(&v)) return std::move(*p);
    throw ParseError("expected a different kind of object, got '" + kind_of(v) + "'");
}

// Canonical single-line text: stable key order, no whitespace.
std::string dump(const Value& v);

Json parse_text(const std::string& text);
Json load_file(const std::filesystem::path& path);

// Human-readable rendering used by the CLI text format.
std::string describe(const Value& v);

}  // namespace compcon::io
