#include "doctest.h"

#include <functional>

#include "compcon/circuit.hpp"
#include "compcon/random.hpp"

using namespace compcon;
using io::Json;

namespace {

std::string data(const char* name) { return std::string(COMPCON_TEST_DATA) + "/" + name; }

CircuitReport check_file(const char* name) { return check_circuit(parse_circuit(io::load_file(data(name)))); }

LabelList labels_of(const io::Value& v) {
    if (auto* s = std::get_if<SectorSpace>(&v)) return s->labels();
    if (auto* s = std::get_if<FactorSpace>(&v)) return s->labels();
    return std::get<PartitionedFinSet>(v).labels();
}

// The composite constraint recomputed with relation operations only.
FiniteRelation fold(const CircuitDescription& c, const CircuitNode& n) {
    const bool product = c.encoding == "sectorial";
    auto rel = [&](const std::string& name) { return std::get<FiniteRelation>(c.objects.at(name)); };
    switch (n.op) {
    case CircuitNode::Op::pair:
        return rel(c.pairs.at(n.name).constraint);
    case CircuitNode::Op::seq: {
        auto acc = fold(c, n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) acc = compose(fold(c, n.children[i]), acc);
        return acc;
    }
    case CircuitNode::Op::par: {
        auto acc = fold(c, n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
            acc = product ? tensor_product(acc, fold(c, n.children[i])) : tensor_disjoint(acc, fold(c, n.children[i]));
        }
        return acc;
    }
    case CircuitNode::Op::dagger:
        return converse(fold(c, n.children[0]));
    case CircuitNode::Op::relax:
        return rel(n.name);
    case CircuitNode::Op::identity:
        return FiniteRelation::identity(labels_of(c.objects.at(n.name)));
    case CircuitNode::Op::cup:
        return cup(labels_of(c.objects.at(n.name)));
    case CircuitNode::Op::cap:
        return cap(labels_of(c.objects.at(n.name)));
    }
    return {};
}

}  // namespace

TEST_CASE("single identity pair") {
    const auto r = check_file("identity_circuit.json");
    REQUIRE(r.satisfied);
    const SectorSpace a({{"a1", 1}, {"a2", 2}});
    CHECK(*r.constraint == io::Value(FiniteRelation::identity(a.labels())));
    CHECK(*r.morphism == io::Value(BlockMatrix::identity(a)));
    CHECK(r.leaves.size() == 1);
}

TEST_CASE("sequential sectorial circuit composes like the relations") {
    const auto c = parse_circuit(io::load_file(data("sectorial_seq.json")));
    const auto r = check_circuit(c);
    REQUIRE(r.satisfied);
    const LabelList a{"a1", "a2"}, cc{"c1", "c2", "c3"};
    const FiniteRelation expected(a, cc, {{0, 0}, {0, 2}, {1, 2}});
    CHECK(*r.constraint == io::Value(expected));
    CHECK(*r.constraint == io::Value(fold(c, c.root)));
    CHECK(r.leaves.size() == 2);
}

TEST_CASE("meet of the parity constraints fails at the channel node") {
    const auto r = check_file("parity_meet.json");
    CHECK_FALSE(r.satisfied);
    CHECK(r.witness_path == "circuit.seq[1]");
    CHECK(r.witness.find("morphism 'parity'") != std::string::npos);
    CHECK(r.witness.find("pair 'joint'") != std::string::npos);
    CHECK(check_file("parity_single.json").satisfied);
}

TEST_CASE("type errors are found before evaluation") {
    const auto c = parse_circuit(io::load_file(data("mistyped.json")));
    CHECK_THROWS_AS(typecheck_circuit(c), TypeCheckError);
    try {
        check_circuit(c);
        FAIL("expected a type error");
    } catch (const TypeCheckError& e) {
        CHECK(std::string(e.what()).find("circuit.seq[1]") != std::string::npos);
    }
}

TEST_CASE("malformed circuits") {
    auto parse = [](const char* text) { return parse_circuit(io::parse_text(text)); };
    CHECK_THROWS_AS(parse(R"({"kind":"relation"})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"kind":"circuit","encoding":"sectorial"})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"kind":"circuit","encoding":"sectorial","circuit":{"loop":"p"}})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"kind":"circuit","encoding":"sectorial","declarations":{
                        "a":{"kind":"relation_op","op":"converse","args":["b"]},
                        "b":{"kind":"relation_op","op":"converse","args":["a"]}},"circuit":"p"})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"kind":"circuit","encoding":"sectorial","declarations":{},
                        "pairs":{"p":{"constraint":"t","morphism":"f"}},"circuit":"p"})"),
                    ParseError);
    CHECK_THROWS_AS(typecheck_circuit(parse(R"({"kind":"circuit","encoding":"sectorial","circuit":"p"})")),
                    TypeCheckError);
    CHECK_THROWS_AS(typecheck_circuit(parse(R"({"kind":"circuit","encoding":"teapot","circuit":"p"})")), ParseError);
    // A channel is not a sectorial morphism.
    CHECK_THROWS_AS(typecheck_circuit(parse(R"({"kind":"circuit","encoding":"sectorial","declarations":{
                        "t":{"kind":"relation","src":["A"],"dst":["B1","B2"],"pairs":[[0,0],[0,1]]},
                        "f":{"kind":"builtin","name":"parity"}},
                        "pairs":{"p":{"constraint":"t","morphism":"f"}},"circuit":"p"})")),
                    TypeCheckError);
}

TEST_CASE("relax, dagger, par and cups") {
    const auto base = io::parse_text(R"({
        "kind": "circuit", "encoding": "sectorial",
        "declarations": {
            "A": {"kind": "sector_space", "sectors": [["a1", 1], ["a2", 1]]},
            "tau": {"kind": "relation", "src": ["a1", "a2"], "dst": ["a1", "a2"], "pairs": [[0, 0], [0, 1], [1, 1]]},
            "all": {"kind": "builtin", "name": "full", "src": "A", "dst": "A"},
            "f": {"kind": "block_matrix", "dom": [["a1", 1], ["a2", 1]], "cod": [["a1", 1], ["a2", 1]],
                  "entries": ["1", "0", "1/2", "1"]}
        },
        "pairs": {"p": {"constraint": "tau", "morphism": "f"}},
        "circuit": "p"})");
    auto with = [&](const char* node) {
        auto j = base;
        j["circuit"] = io::parse_text(node);
        return parse_circuit(j);
    };

    const auto relaxed = with(R"({"relax": "p", "to": "all"})");
    auto r = check_circuit(relaxed);
    REQUIRE(r.satisfied);
    CHECK(*r.constraint == io::Value(fold(relaxed, relaxed.root)));

    const auto daggered = with(R"({"seq": [{"dagger": "p"}, "p"]})");
    r = check_circuit(daggered);
    REQUIRE(r.satisfied);
    CHECK(*r.constraint == io::Value(fold(daggered, daggered.root)));

    const auto parallel = with(R"({"par": ["p", {"identity": "A"}]})");
    r = check_circuit(parallel);
    REQUIRE(r.satisfied);
    CHECK(*r.constraint == io::Value(fold(parallel, parallel.root)));

    const auto loop = with(R"({"seq": [{"cup": "A"}, {"cap": "A"}]})");
    r = check_circuit(loop);
    REQUIRE(r.satisfied);
    CHECK(*r.constraint == io::Value(fold(loop, loop.root)));
    CHECK(std::get<FiniteRelation>(*r.constraint).pair_count() == 1);

    // Going back from the full relation to tau would strengthen the constraint.
    CHECK_THROWS_AS(check_circuit(with(R"({"relax": {"relax": "p", "to": "all"}, "to": "tau"})")), TypeCheckError);

    auto biproduct = base;
    biproduct["encoding"] = "sectorial-biproduct";
    biproduct["circuit"] = io::parse_text(R"({"cup": "A"})");
    CHECK_THROWS_AS(check_circuit(parse_circuit(biproduct)), TypeCheckError);
    biproduct["circuit"] = io::parse_text(R"({"par": ["p", "p"]})");
    CHECK_THROWS_AS(check_circuit(parse_circuit(biproduct)), TypeCheckError);
}

TEST_CASE("funcrel, monoid and csp circuits") {
    const auto funcrel = parse_circuit(io::parse_text(R"({
        "kind": "circuit", "encoding": "funcrel",
        "declarations": {
            "X": {"kind": "partitioned_set", "blocks": [["x", 2]]},
            "t": {"kind": "relation", "src": ["x"], "dst": ["y", "z"], "pairs": [[0, 1]]},
            "f": {"kind": "function", "dom": [["x", 2]], "cod": [["y", 1], ["z", 2]], "map": [2, 1]},
            "u": {"kind": "relation", "src": ["w"], "dst": ["v"], "pairs": [[0, 0]]},
            "g": {"kind": "function", "dom": [["w", 1]], "cod": [["v", 3]], "map": [2]}
        },
        "pairs": {"p": {"constraint": "t", "morphism": "f"}, "q": {"constraint": "u", "morphism": "g"}},
        "circuit": {"par": [{"seq": [{"identity": "X"}, "p"]}, "q"]}})"));
    auto r = check_circuit(funcrel);
    REQUIRE(r.satisfied);
    CHECK(*r.constraint == io::Value(fold(funcrel, funcrel.root)));
    CHECK(std::get<PartitionedFunction>(*r.morphism).map() == std::vector<std::size_t>{2, 1, 5});

    // {e, z} with z idempotent; p is labelled by z, q by e.
    const auto monoid = parse_circuit(io::parse_text(R"({
        "kind": "circuit", "encoding": "monoid", "monoid": "M", "labeling": "L",
        "declarations": {
            "M": {"kind": "monoid", "size": 2, "table": [0, 1, 1, 1], "identity": 0},
            "L": {"kind": "labeling", "points": ["p", "q"], "assignment": [1, 0]},
            "e": {"kind": "monoid_element", "value": 0},
            "z": {"kind": "monoid_element", "value": 1},
            "pq": {"kind": "relation", "src": ["p", "q"], "dst": ["p", "q"], "pairs": [[0, 1]]}
        },
        "pairs": {"a": {"constraint": "pq", "morphism": "z"}, "b": {"constraint": "pq", "morphism": "e"}},
        "circuit": {"seq": ["a", "a"]}})"));
    r = check_circuit(monoid);
    REQUIRE(r.satisfied);
    CHECK(*r.morphism == io::Value(io::MonoidElement{1}));
    auto bad = monoid;
    bad.root = CircuitNode{CircuitNode::Op::pair, "b", {}, "circuit"};
    r = check_circuit(bad);
    CHECK_FALSE(r.satisfied);
    CHECK(r.witness_path == "circuit");

    const auto csp = parse_circuit(io::parse_text(R"({
        "kind": "circuit", "encoding": "csp",
        "declarations": {
            "two": {"kind": "finite_set", "size": 2},
            "c": {"kind": "csp", "dom": 2, "cod": 2, "constraints": [{"scope": [0], "allowed": [[1]]}]},
            "swap": {"kind": "fin_map", "cod": 2, "map": [1, 0]}
        },
        "pairs": {"p": {"constraint": "c", "morphism": "swap"}},
        "circuit": {"seq": ["p", {"identity": "two"}]}})"));
    r = check_circuit(csp);
    REQUIRE(r.satisfied);
    CHECK(*r.morphism == io::Value(FinMap{2, {1, 0}}));
    const auto expected = CSPProblem(2, 2, {{{0}, {{1}}}});
    CHECK(*r.constraint == io::Value(expected));
}

TEST_CASE("random sectorial circuits agree with the relation fold") {
    Rng rng(17);
    for (int t = 0; t < 60; ++t) {
        Json decls = Json::object(), pairs = Json::object();
        std::vector<SectorSpace> spaces;
        const std::size_t steps = uniform_index(rng, 1, 4);
        for (std::size_t k = 0; k <= steps; ++k) {
            spaces.push_back(random_sector_space(rng, "s" + std::to_string(k) + "_", 3, 2));
        }
        Json seq = Json::array();
        for (std::size_t k = 0; k < steps; ++k) {
            const auto rel = random_relation(spaces[k].labels(), spaces[k + 1].labels(), rng);
            const auto f = random_block_matrix_within(spaces[k], spaces[k + 1], rel, rng);
            const auto n = std::to_string(k);
            decls["r" + n] = io::to_json(rel);
            decls["f" + n] = io::to_json(f);
            pairs["p" + n] = Json{{"constraint", "r" + n}, {"morphism", "f" + n}};
            seq.push_back(coin(rng) ? Json("p" + n) : Json{{"dagger", Json{{"dagger", "p" + n}}}});
        }
        Json node = Json{{"seq", seq}};
        if (coin(rng)) node = Json{{"par", Json::array({node, Json{{"identity", "s"}}})}};
        decls["s"] = io::to_json(random_sector_space(rng, "t", 2, 2));
        const auto c = parse_circuit(
            Json{{"kind", "circuit"}, {"encoding", "sectorial"}, {"declarations", decls}, {"pairs", pairs}, {"circuit", node}});
        const auto r = check_circuit(c);
        REQUIRE(r.satisfied);
        CHECK(*r.constraint == io::Value(fold(c, c.root)));
    }
}
