#include "compcon/io.hpp"

#include <fstream>
#include <sstream>

namespace compcon::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) fail("expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t index(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        fail(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::vector<std::size_t> indices(const Json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(index(e, what));
    return out;
}

LabelList labels(const Json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array of labels");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) fail(std::string(what) + " must be an array of labels");
        out.push_back(e.get<std::string>());
    }
    return LabelList(std::move(out));
}

Json labels_json(const LabelList& l) {
    Json out = Json::array();
    for (const auto& s : l) out.push_back(s);
    return out;
}

// [["label", size], ...], shared by sectors, factors and blocks.
std::vector<std::pair<std::string, std::size_t>> sized_labels(const Json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array of [label, size] pairs");
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string()) {
            fail(std::string(what) + " entries must be [label, size] pairs");
        }
        out.emplace_back(e[0].get<std::string>(), index(e[1], what));
    }
    return out;
}

template <class Items>
Json sized_json(const Items& items, std::size_t (*size_of)(const typename Items::value_type&)) {
    Json out = Json::array();
    for (const auto& it : items) out.push_back(Json::array({it.label, size_of(it)}));
    return out;
}

SectorSpace sectors(const Json& j) {
    std::vector<Sector> out;
    for (auto& [l, d] : sized_labels(j, "sectors")) out.push_back({l, d});
    return SectorSpace(std::move(out));
}

FactorSpace factors(const Json& j) {
    std::vector<Factor> out;
    for (auto& [l, c] : sized_labels(j, "factors")) out.push_back({l, c});
    return FactorSpace(std::move(out));
}

PartitionedFinSet blocks(const Json& j) {
    std::vector<Block> out;
    for (auto& [l, s] : sized_labels(j, "blocks")) out.push_back({l, s});
    return PartitionedFinSet(std::move(out));
}

Json sectors_json(const SectorSpace& s) {
    return sized_json(s.sectors(), +[](const Sector& x) { return x.dim; });
}
Json factors_json(const FactorSpace& s) {
    return sized_json(s.factors(), +[](const Factor& x) { return x.card; });
}
Json blocks_json(const PartitionedFinSet& s) {
    return sized_json(s.blocks(), +[](const Block& x) { return x.size; });
}

Matrix entries(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array()) fail("entries must be an array of \"p/q\" strings");
    if (j.size() != rows * cols) {
        fail("entries has " + std::to_string(j.size()) + " values, expected " + std::to_string(rows) + "x" +
             std::to_string(cols));
    }
    std::vector<Rational> data;
    data.reserve(j.size());
    for (const auto& e : j) {
        if (e.is_string()) {
            data.push_back(Rational::parse(e.get<std::string>()));
        } else if (e.is_number_integer()) {
            data.emplace_back(e.get<std::int64_t>());
        } else {
            fail("entries must be \"p/q\" strings");
        }
    }
    return Matrix(rows, cols, std::move(data));
}

Json entries_json(const Matrix& m) {
    Json out = Json::array();
    for (const auto& x : m.data()) out.push_back(x.to_string());
    return out;
}

FiniteRelation relation(const Json& j) {
    auto src = labels(field(j, "src"), "src");
    auto dst = labels(field(j, "dst"), "dst");
    const auto& pj = field(j, "pairs");
    if (!pj.is_array()) fail("pairs must be an array");
    std::vector<FiniteRelation::Pair> pairs;
    for (const auto& p : pj) {
        if (!p.is_array() || p.size() != 2) fail("pairs entries must be [i, j]");
        pairs.emplace_back(index(p[0], "pair index"), index(p[1], "pair index"));
    }
    return FiniteRelation(std::move(src), std::move(dst), pairs);
}

Tuple tuple(const Json& j) { return indices(j, "tuple"); }

CSPProblem csp(const Json& j) {
    const auto dom = index(field(j, "dom"), "dom");
    const auto cod = index(field(j, "cod"), "cod");
    const auto& cj = field(j, "constraints");
    if (!cj.is_array()) fail("constraints must be an array");
    std::set<CSPConstraint> cs;
    for (const auto& c : cj) {
        CSPConstraint k;
        k.scope = tuple(field(c, "scope"));
        const auto& aj = field(c, "allowed");
        if (!aj.is_array()) fail("allowed must be an array of tuples");
        for (const auto& a : aj) k.allowed.insert(tuple(a));
        cs.insert(std::move(k));
    }
    return CSPProblem(dom, cod, std::move(cs));
}

Json tuple_json(const Tuple& t) {
    Json out = Json::array();
    for (auto x : t) out.push_back(x);
    return out;
}

std::string join(const LabelList& l) {
    std::string out = "[";
    for (std::size_t i = 0; i < l.size(); ++i) out += (i ? "," : "") + l[i];
    return out + "]";
}

template <class Items>
std::string sized_text(const Items& items, std::size_t (*size_of)(const typename Items::value_type&)) {
    std::string out = "[";
    bool first = true;
    for (const auto& it : items) {
        out += (first ? "" : ",") + it.label + ":" + std::to_string(size_of(it));
        first = false;
    }
    return out + "]";
}

std::string matrix_text(const Matrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += "\n   ";
        for (std::size_t c = 0; c < m.cols(); ++c) out += " " + m(r, c).to_string();
    }
    return out;
}

}  // namespace

std::string kind_of(const Value& v) {
    static const char* const names[] = {"relation", "sector_space", "factor_space", "partitioned_set",
                                        "finite_set", "block_matrix", "channel", "function",
                                        "fin_map", "monoid", "labeling", "monoid_element",
                                        "csp"};
    static_assert(std::variant_size_v<Value> == std::size(names));
    return names[v.index()];
}

Json to_json(const Value& v) {
    Json j;
    j["kind"] = kind_of(v);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, FiniteRelation>) {
                j["src"] = labels_json(x.src());
                j["dst"] = labels_json(x.dst());
                Json pairs = Json::array();
                for (auto [a, b] : x.pairs()) pairs.push_back(Json::array({a, b}));
                j["pairs"] = std::move(pairs);
            } else if constexpr (std::is_same_v<T, SectorSpace>) {
                j["sectors"] = sectors_json(x);
            } else if constexpr (std::is_same_v<T, FactorSpace>) {
                j["factors"] = factors_json(x);
            } else if constexpr (std::is_same_v<T, PartitionedFinSet>) {
                j["blocks"] = blocks_json(x);
            } else if constexpr (std::is_same_v<T, FiniteSet>) {
                j["size"] = x.size;
            } else if constexpr (std::is_same_v<T, BlockMatrix>) {
                j["dom"] = sectors_json(x.dom());
                j["cod"] = sectors_json(x.cod());
                j["entries"] = entries_json(x.entries());
            } else if constexpr (std::is_same_v<T, StochChannel>) {
                j["dom"] = factors_json(x.dom());
                j["cod"] = factors_json(x.cod());
                j["entries"] = entries_json(x.matrix());
            } else if constexpr (std::is_same_v<T, PartitionedFunction>) {
                j["dom"] = blocks_json(x.dom());
                j["cod"] = blocks_json(x.cod());
                j["map"] = x.map();
            } else if constexpr (std::is_same_v<T, FinMap>) {
                j["cod"] = x.cod;
                j["map"] = x.map;
            } else if constexpr (std::is_same_v<T, FiniteMonoid>) {
                j["size"] = x.size();
                j["table"] = x.table();
                j["identity"] = x.identity();
            } else if constexpr (std::is_same_v<T, MonoidLabeling>) {
                j["points"] = labels_json(x.points());
                j["assignment"] = x.assignment();
            } else if constexpr (std::is_same_v<T, MonoidElement>) {
                j["value"] = x.value;
            } else if constexpr (std::is_same_v<T, CSPProblem>) {
                j["dom"] = x.dom_size();
                j["cod"] = x.cod_size();
                Json cs = Json::array();
                for (const auto& c : x.constraints()) {
                    Json allowed = Json::array();
                    for (const auto& t : c.allowed) allowed.push_back(tuple_json(t));
                    cs.push_back(Json{{"scope", tuple_json(c.scope)}, {"allowed", std::move(allowed)}});
                }
                j["constraints"] = std::move(cs);
            }
        },
        v);
    return j;
}

Value from_json(const Json& j) {
    if (!j.is_object()) fail("expected an object");
    if (!j.contains("kind")) {
        if (j.contains("src") && j.contains("dst") && j.contains("pairs")) return relation(j);
        fail("missing field 'kind'");
    }
    const auto& kj = j["kind"];
    if (!kj.is_string()) fail("'kind' must be a string");
    const auto kind = kj.get<std::string>();
    if (kind == "relation") return relation(j);
    if (kind == "sector_space") return sectors(field(j, "sectors"));
    if (kind == "factor_space") return factors(field(j, "factors"));
    if (kind == "partitioned_set") return blocks(field(j, "blocks"));
    if (kind == "finite_set") return FiniteSet{index(field(j, "size"), "size")};
    if (kind == "block_matrix") {
        auto dom = sectors(field(j, "dom"));
        auto cod = sectors(field(j, "cod"));
        auto m = entries(field(j, "entries"), cod.total_dim(), dom.total_dim());
        return BlockMatrix(std::move(dom), std::move(cod), std::move(m));
    }
    if (kind == "channel") {
        auto dom = factors(field(j, "dom"));
        auto cod = factors(field(j, "cod"));
        auto m = entries(field(j, "entries"), cod.total(), dom.total());
        return StochChannel(std::move(dom), std::move(cod), std::move(m));
    }
    if (kind == "function") {
        auto dom = blocks(field(j, "dom"));
        auto cod = blocks(field(j, "cod"));
        return PartitionedFunction(std::move(dom), std::move(cod), indices(field(j, "map"), "map"));
    }
    if (kind == "fin_map") {
        FinMap f{index(field(j, "cod"), "cod"), indices(field(j, "map"), "map")};
        for (auto x : f.map) {
            if (x >= f.cod) throw IndexOutOfRange("fin_map image " + std::to_string(x) + " outside the codomain");
        }
        return f;
    }
    if (kind == "monoid") {
        return FiniteMonoid(index(field(j, "size"), "size"), indices(field(j, "table"), "table"),
                            index(field(j, "identity"), "identity"));
    }
    if (kind == "labeling") {
        auto points = labels(field(j, "points"), "points");
        auto assignment = indices(field(j, "assignment"), "assignment");
        std::size_t bound = 0;
        for (auto m : assignment) bound = std::max(bound, m + 1);
        if (j.contains("monoid_size")) bound = index(j["monoid_size"], "monoid_size");
        return MonoidLabeling(std::move(points), std::move(assignment), bound);
    }
    if (kind == "monoid_element") return MonoidElement{index(field(j, "value"), "value")};
    if (kind == "csp") return csp(j);
    fail("unknown kind '" + kind + "'");
}

std::string dump(const Value& v) { return to_json(v).dump(); }

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
}

Json load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_text(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string describe(const Value& v) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, FiniteRelation>) {
                std::string out = "relation " + join(x.src()) + " -> " + join(x.dst()) + " {";
                bool first = true;
                for (auto [a, b] : x.pairs()) {
                    out += (first ? "" : ", ") + std::string("(") + x.src()[a] + "," + x.dst()[b] + ")";
                    first = false;
                }
                return out + "}";
            } else if constexpr (std::is_same_v<T, SectorSpace>) {
                return "sector space " + sized_text(x.sectors(), +[](const Sector& s) { return s.dim; });
            } else if constexpr (std::is_same_v<T, FactorSpace>) {
                return "factor space " + sized_text(x.factors(), +[](const Factor& s) { return s.card; });
            } else if constexpr (std::is_same_v<T, PartitionedFinSet>) {
                return "partitioned set " + sized_text(x.blocks(), +[](const Block& s) { return s.size; });
            } else if constexpr (std::is_same_v<T, FiniteSet>) {
                return "finite set of size " + std::to_string(x.size);
            } else if constexpr (std::is_same_v<T, BlockMatrix>) {
                return "block matrix " + sized_text(x.dom().sectors(), +[](const Sector& s) { return s.dim; }) +
                       " -> " + sized_text(x.cod().sectors(), +[](const Sector& s) { return s.dim; }) +
                       matrix_text(x.entries());
            } else if constexpr (std::is_same_v<T, StochChannel>) {
                return "channel " + sized_text(x.dom().factors(), +[](const Factor& s) { return s.card; }) +
                       " -> " + sized_text(x.cod().factors(), +[](const Factor& s) { return s.card; }) +
                       matrix_text(x.matrix());
            } else if constexpr (std::is_same_v<T, PartitionedFunction>) {
                std::string out = "function " + sized_text(x.dom().blocks(), +[](const Block& s) { return s.size; }) +
                                  " -> " + sized_text(x.cod().blocks(), +[](const Block& s) { return s.size; }) +
                                  " map";
                for (auto y : x.map()) out += " " + std::to_string(y);
                return out;
            } else if constexpr (std::is_same_v<T, FinMap>) {
                std::string out = "map " + std::to_string(x.map.size()) + " -> " + std::to_string(x.cod) + ":";
                for (auto y : x.map) out += " " + std::to_string(y);
                return out;
            } else if constexpr (std::is_same_v<T, FiniteMonoid>) {
                return "monoid of order " + std::to_string(x.size()) + ", identity " + std::to_string(x.identity());
            } else if constexpr (std::is_same_v<T, MonoidLabeling>) {
                return "labeling of " + join(x.points());
            } else if constexpr (std::is_same_v<T, MonoidElement>) {
                return "monoid element " + std::to_string(x.value);
            } else {
                std::string out = "csp " + std::to_string(x.dom_size()) + " -> " + std::to_string(x.cod_size()) +
                                  ", " + std::to_string(x.constraints().size()) + " constraints";
                for (const auto& c : x.constraints()) {
                    out += "\n    (";
                    for (std::size_t i = 0; i < c.scope.size(); ++i) out += (i ? "," : "") + std::to_string(c.scope[i]);
                    out += ") in {";
                    bool first = true;
                    for (const auto& t : c.allowed) {
                        out += first ? "(" : ", (";
                        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
                        out += ")";
                        first = false;
                    }
                    out += "}";
                }
                return out;
            }
        },
        v);
}

}  // namespace compcon::io
