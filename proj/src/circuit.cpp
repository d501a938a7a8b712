#include "compcon/circuit.hpp"

#include <functional>
#include <set>

#include "compcon/encodings.hpp"

namespace compcon {

namespace {

using io::Json;
using io::Value;

// ---- declarations ----------------------------------------------------------

class Resolver {
public:
    explicit Resolver(const Json& decls) : decls_(decls) {}

    std::map<std::string, Value> resolve_all() {
        for (const auto& [name, _] : decls_.items()) get(name);
        return std::move(done_);
    }

private:
    const Value& get(const std::string& name) {
        if (auto it = done_.find(name); it != done_.end()) return it->second;
        if (!decls_.contains(name)) throw ParseError("undeclared name '" + name + "'");
        if (!active_.insert(name).second) throw ParseError("declaration '" + name + "' refers to itself");
        Value v;
        try {
            v = build(decls_[name]);
        } catch (const ParseError& e) {
            throw ParseError("declaration '" + name + "': " + e.what());
        } catch (const TypeCheckError& e) {
            throw TypeCheckError("declaration '" + name + "': " + e.what());
        } catch (const Error& e) {
            throw InvalidValue("declaration '" + name + "': " + e.what());
        }
        active_.erase(name);
        return done_.emplace(name, std::move(v)).first->second;
    }

    std::string ref(const Json& j, const char* key) {
        if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("'") + key + "' must name a declaration");
        return j[key].get<std::string>();
    }

    FiniteRelation relation(const std::string& name) {
        const auto& v = get(name);
        if (auto* r = std::get_if<FiniteRelation>(&v)) return *r;
        throw TypeCheckError("'" + name + "' is a " + io::kind_of(v) + ", expected a relation");
    }

    LabelList labels(const std::string& name) {
        const auto& v = get(name);
        if (auto* s = std::get_if<SectorSpace>(&v)) return s->labels();
        if (auto* s = std::get_if<FactorSpace>(&v)) return s->labels();
        if (auto* s = std::get_if<PartitionedFinSet>(&v)) return s->labels();
        if (auto* s = std::get_if<MonoidLabeling>(&v)) return s->points();
        throw TypeCheckError("'" + name + "' is a " + io::kind_of(v) + ", expected a labelled space");
    }

    Value build(const Json& j) {
        if (!j.is_object()) throw ParseError("expected an object");
        const auto kind = j.value("kind", std::string{});
        if (kind == "relation_op") return relation_op(j);
        if (kind == "builtin") return builtin(j);
        return io::from_json(j);
    }

    Value relation_op(const Json& j) {
        const auto op = j.value("op", std::string{});
        if (!j.contains("args") || !j["args"].is_array() || j["args"].empty()) {
            throw ParseError("relation_op needs a non-empty 'args' array");
        }
        std::vector<FiniteRelation> args;
        for (const auto& a : j["args"]) {
            if (!a.is_string()) throw ParseError("relation_op args must be names");
            args.push_back(relation(a.get<std::string>()));
        }
        if (op == "converse") {
            if (args.size() != 1) throw ParseError("converse takes one argument");
            return converse(args[0]);
        }
        std::function<FiniteRelation(const FiniteRelation&, const FiniteRelation&)> step;
        if (op == "compose") {
            step = [](const FiniteRelation& acc, const FiniteRelation& next) { return compose(next, acc); };
        } else if (op == "meet") {
            step = [](const FiniteRelation& a, const FiniteRelation& b) { return meet(a, b); };
        } else if (op == "tensor_disjoint") {
            step = [](const FiniteRelation& a, const FiniteRelation& b) { return tensor_disjoint(a, b); };
        } else if (op == "tensor_product") {
            step = [](const FiniteRelation& a, const FiniteRelation& b) { return tensor_product(a, b); };
        } else {
            throw ParseError("unknown relation_op '" + op + "'");
        }
        auto acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) acc = step(acc, args[i]);
        return acc;
    }

    Value builtin(const Json& j) {
        const auto name = j.value("name", std::string{});
        if (name == "parity") return parity_counterexample();
        if (name == "full" || name == "empty") {
            const auto src = labels(ref(j, "src")), dst = labels(ref(j, "dst"));
            return name == "full" ? FiniteRelation::full(src, dst) : FiniteRelation::empty(src, dst);
        }
        const auto of = ref(j, "of");
        if (name == "identity_relation") return FiniteRelation::identity(labels(of));
        if (name == "cup") return cup(labels(of));
        if (name == "cap") return cap(labels(of));
        const auto& space = get(of);
        if (name == "identity") {
            if (auto* s = std::get_if<SectorSpace>(&space)) return BlockMatrix::identity(*s);
            if (auto* s = std::get_if<FactorSpace>(&space)) return StochChannel::identity(*s);
            if (auto* s = std::get_if<PartitionedFinSet>(&space)) return PartitionedFunction::identity(*s);
            if (auto* s = std::get_if<io::FiniteSet>(&space)) {
                FinMap f{s->size, {}};
                for (std::size_t i = 0; i < s->size; ++i) f.map.push_back(i);
                return f;
            }
            throw TypeCheckError("no identity morphism on a " + io::kind_of(space));
        }
        if (name == "sector_cup" || name == "sector_cap") {
            auto* s = std::get_if<SectorSpace>(&space);
            if (!s) throw TypeCheckError(name + " needs a sector_space");
            return name == "sector_cup" ? sector_cup(*s) : sector_cap(*s);
        }
        throw ParseError("unknown builtin '" + name + "'");
    }

    const Json& decls_;
    std::map<std::string, Value> done_;
    std::set<std::string> active_;
};

CircuitNode parse_node(const Json& j, const std::string& path) {
    CircuitNode n;
    n.path = path;
    if (j.is_string()) {
        n.op = CircuitNode::Op::pair;
        n.name = j.get<std::string>();
        return n;
    }
    if (!j.is_object() || j.empty()) throw ParseError(path + ": expected a pair name or a node object");
    auto list = [&](const char* key, CircuitNode::Op op) {
        const auto& items = j[key];
        if (!items.is_array() || items.empty()) throw ParseError(path + ": '" + key + "' needs a non-empty array");
        n.op = op;
        for (std::size_t i = 0; i < items.size(); ++i) {
            n.children.push_back(parse_node(items[i], path + "." + key + "[" + std::to_string(i) + "]"));
        }
    };
    auto named = [&](const char* key, CircuitNode::Op op) {
        if (!j[key].is_string()) throw ParseError(path + ": '" + key + "' must name a declaration");
        n.op = op;
        n.name = j[key].get<std::string>();
    };
    if (j.contains("seq")) {
        list("seq", CircuitNode::Op::seq);
    } else if (j.contains("par")) {
        list("par", CircuitNode::Op::par);
    } else if (j.contains("dagger")) {
        n.op = CircuitNode::Op::dagger;
        n.children.push_back(parse_node(j["dagger"], path + ".dagger"));
    } else if (j.contains("relax")) {
        n.op = CircuitNode::Op::relax;
        if (!j.contains("to") || !j["to"].is_string()) throw ParseError(path + ": relax needs 'to'");
        n.name = j["to"].get<std::string>();
        n.children.push_back(parse_node(j["relax"], path + ".relax"));
    } else if (j.contains("identity")) {
        named("identity", CircuitNode::Op::identity);
    } else if (j.contains("cup")) {
        named("cup", CircuitNode::Op::cup);
    } else if (j.contains("cap")) {
        named("cap", CircuitNode::Op::cap);
    } else {
        throw ParseError(path + ": unknown node " + j.dump());
    }
    return n;
}

// ---- evaluation --------------------------------------------------------------

// Raised during evaluation, carrying the node that failed.
struct NodeFailure {
    std::string path;
    std::string message;
};

std::string object_text(const SectorSpace& s) { return io::describe(s); }
std::string object_text(const FactorSpace& s) { return io::describe(s); }
std::string object_text(const PartitionedFinSet& s) { return io::describe(s); }
std::string object_text(std::size_t n) { return "finite set of size " + std::to_string(n); }
std::string object_text(std::monostate) { return "the single object"; }

std::string labels_text(const LabelList& l) {
    std::string out = "[";
    for (std::size_t i = 0; i < l.size(); ++i) out += (i ? "," : "") + l[i];
    return out + "]";
}

template <ConstraintEncoding E>
class Runner {
public:
    using Cat = ConstrainedCategory<E>;
    using Pair = typename Cat::Pair;
    using Constraint = typename E::Constraint;
    using Morphism = typename E::Morphism;
    using Object = typename E::Object;

    struct Type {
        Object dom;
        Object cod;
        Constraint constraint;
    };

    Runner(const CircuitDescription& c, E enc) : c_(c), cat_(std::move(enc), true) {}

    Type typecheck(const CircuitNode& n) {
        try {
            return typecheck_node(n);
        } catch (const TypeCheckError&) {
            throw;
        } catch (const Error& e) {
            throw TypeCheckError(n.path + ": " + e.what());
        }
    }

    Pair eval(const CircuitNode& n, CircuitReport& report) {
        const auto& enc = cat_.encoding();
        try {
            switch (n.op) {
            case CircuitNode::Op::pair: {
                const auto& d = c_.pairs.at(n.name);
                const auto where = "pair '" + n.name + "' (constraint '" + d.constraint + "', morphism '" +
                                   d.morphism + "')";
                try {
                    auto p = cat_.pair(constraint(d.constraint, n.path), morphism(d.morphism, n.path));
                    report.leaves.push_back(n.path + ": " + where + " holds");
                    return p;
                } catch (const UnsatisfiedConstraint& e) {
                    throw NodeFailure{n.path, where + " violated: " + e.witness()};
                }
            }
            case CircuitNode::Op::seq: {
                auto acc = eval(n.children[0], report);
                for (std::size_t i = 1; i < n.children.size(); ++i) acc = cat_.compose(eval(n.children[i], report), acc);
                return acc;
            }
            case CircuitNode::Op::par:
                if constexpr (requires(const Pair& p) { cat_.tensor(p, p); }) {
                    auto acc = eval(n.children[0], report);
                    for (std::size_t i = 1; i < n.children.size(); ++i) acc = cat_.tensor(acc, eval(n.children[i], report));
                    return acc;
                }
                break;
            case CircuitNode::Op::dagger:
                if constexpr (requires(const Pair& p) { cat_.dagger(p); }) {
                    return cat_.dagger(eval(n.children[0], report));
                }
                break;
            case CircuitNode::Op::relax:
                return cat_.relax(eval(n.children[0], report), constraint(n.name, n.path));
            case CircuitNode::Op::identity:
                return cat_.identity(object(n.name, n.path));
            case CircuitNode::Op::cup:
                if constexpr (requires(const Object& o) { cat_.cup(o); }) return cat_.cup(object(n.name, n.path));
                break;
            case CircuitNode::Op::cap:
                if constexpr (requires(const Object& o) { cat_.cap(o); }) return cat_.cap(object(n.name, n.path));
                break;
            }
        } catch (const LaxityViolation& e) {
            throw NodeFailure{n.path, e.what()};
        }
        throw UnsupportedStructure(n.path + ": " + std::string(enc.name()) + " encoding cannot evaluate this node");
    }

    static Value constraint_value(const Constraint& c) { return c; }
    static Value morphism_value(const Morphism& m) {
        if constexpr (std::is_same_v<Morphism, std::size_t>) {
            return io::MonoidElement{m};
        } else {
            return m;
        }
    }

private:
    [[noreturn]] void mismatch(const std::string& path, const std::string& what) const {
        throw TypeCheckError(path + ": " + what);
    }

    const Value& lookup(const std::string& name, const std::string& path) const {
        auto it = c_.objects.find(name);
        if (it == c_.objects.end()) mismatch(path, "undeclared name '" + name + "'");
        return it->second;
    }

    Constraint constraint(const std::string& name, const std::string& path) const {
        const auto& v = lookup(name, path);
        if (auto* x = std::get_if<Constraint>(&v)) return *x;
        mismatch(path, "'" + name + "' is a " + io::kind_of(v) + ", not a " + std::string(cat_.encoding().name()) +
                           " constraint");
    }

    Morphism morphism(const std::string& name, const std::string& path) const {
        const auto& v = lookup(name, path);
        if constexpr (std::is_same_v<Morphism, std::size_t>) {
            if (auto* x = std::get_if<io::MonoidElement>(&v)) {
                if (x->value >= cat_.encoding().monoid().size()) {
                    mismatch(path, "'" + name + "' is not an element of the monoid");
                }
                return x->value;
            }
        } else {
            if (auto* x = std::get_if<Morphism>(&v)) return *x;
        }
        mismatch(path, "'" + name + "' is a " + io::kind_of(v) + ", not a " + std::string(cat_.encoding().name()) +
                           " morphism");
    }

    Object object(const std::string& name, const std::string& path) const {
        if constexpr (std::is_same_v<Object, std::monostate>) {
            return {};
        } else {
            const auto& v = lookup(name, path);
            if constexpr (std::is_same_v<Object, std::size_t>) {
                if (auto* x = std::get_if<io::FiniteSet>(&v)) return x->size;
            } else {
                if (auto* x = std::get_if<Object>(&v)) return *x;
            }
            mismatch(path, "'" + name + "' is a " + io::kind_of(v) + ", not a " +
                               std::string(cat_.encoding().name()) + " object");
        }
    }

    static std::pair<Object, Object> boundary(const Morphism& m) {
        if constexpr (std::is_same_v<Morphism, std::size_t>) {
            return {};
        } else if constexpr (std::is_same_v<Morphism, FinMap>) {
            return {m.map.size(), m.cod};
        } else {
            return {m.dom(), m.cod()};
        }
    }

    void check_fits(const Constraint& c, const Object& dom, const Object& cod, const std::string& path,
                    const std::string& what) const {
        if constexpr (std::is_same_v<Constraint, CSPProblem>) {
            if (c.dom_size() != dom || c.cod_size() != cod) {
                mismatch(path, what + " is a problem " + std::to_string(c.dom_size()) + " -> " +
                                   std::to_string(c.cod_size()) + ", the morphism maps " + std::to_string(dom) +
                                   " -> " + std::to_string(cod));
            }
        } else if constexpr (std::is_same_v<Object, std::monostate>) {
            const auto& points = cat_.encoding().labeling().points();
            if (c.src() != points || c.dst() != points) {
                mismatch(path, what + " must relate the labeled points " + labels_text(points));
            }
        } else {
            if (c.src() != dom.labels() || c.dst() != cod.labels()) {
                mismatch(path, what + " runs " + labels_text(c.src()) + " -> " + labels_text(c.dst()) +
                                   ", the boundary is " + labels_text(dom.labels()) + " -> " +
                                   labels_text(cod.labels()));
            }
        }
    }

    Type typecheck_node(const CircuitNode& n) {
        const auto& enc = cat_.encoding();
        switch (n.op) {
        case CircuitNode::Op::pair: {
            auto it = c_.pairs.find(n.name);
            if (it == c_.pairs.end()) mismatch(n.path, "undeclared pair '" + n.name + "'");
            auto c = constraint(it->second.constraint, n.path);
            auto [dom, cod] = boundary(morphism(it->second.morphism, n.path));
            check_fits(c, dom, cod, n.path, "constraint '" + it->second.constraint + "'");
            return {std::move(dom), std::move(cod), std::move(c)};
        }
        case CircuitNode::Op::seq: {
            auto acc = typecheck(n.children[0]);
            for (std::size_t i = 1; i < n.children.size(); ++i) {
                auto next = typecheck(n.children[i]);
                if (!(acc.cod == next.dom)) {
                    mismatch(n.children[i].path, "input " + object_text(next.dom) +
                                                     " does not match the preceding output " + object_text(acc.cod));
                }
                acc = {std::move(acc.dom), std::move(next.cod), enc.compose_constraints(next.constraint, acc.constraint)};
            }
            return acc;
        }
        case CircuitNode::Op::par:
            if constexpr (requires(const Object& o, const Constraint& c) {
                              enc.tensor_objects(o, o);
                              enc.tensor_constraints(c, c);
                          }) {
                if (!enc.supports(Structure::tensor)) break;
                auto acc = typecheck(n.children[0]);
                for (std::size_t i = 1; i < n.children.size(); ++i) {
                    auto next = typecheck(n.children[i]);
                    acc = {enc.tensor_objects(acc.dom, next.dom), enc.tensor_objects(acc.cod, next.cod),
                           enc.tensor_constraints(acc.constraint, next.constraint)};
                }
                return acc;
            }
            break;
        case CircuitNode::Op::dagger:
            if constexpr (requires(const Constraint& c) { enc.dagger_constraint(c); }) {
                if (!enc.supports(Structure::dagger)) break;
                auto t = typecheck(n.children[0]);
                return {std::move(t.cod), std::move(t.dom), enc.dagger_constraint(t.constraint)};
            }
            break;
        case CircuitNode::Op::relax: {
            auto t = typecheck(n.children[0]);
            auto target = constraint(n.name, n.path);
            check_fits(target, t.dom, t.cod, n.path, "relax target '" + n.name + "'");
            if (!enc.leq(t.constraint, target)) {
                mismatch(n.path, "relax target '" + n.name + "' is not weaker than the constraint it replaces");
            }
            return {std::move(t.dom), std::move(t.cod), std::move(target)};
        }
        case CircuitNode::Op::identity: {
            auto o = object(n.name, n.path);
            return {o, o, enc.identity_constraint(o)};
        }
        case CircuitNode::Op::cup:
        case CircuitNode::Op::cap:
            if constexpr (requires(const Object& o) {
                              enc.cup_constraint(o);
                              enc.unit();
                              enc.tensor_objects(o, o);
                          }) {
                if (!enc.supports(Structure::compact)) break;
                auto o = object(n.name, n.path);
                auto doubled = enc.tensor_objects(o, o);
                if (n.op == CircuitNode::Op::cup) return {enc.unit(), doubled, enc.cup_constraint(o)};
                return {doubled, enc.unit(), enc.cap_constraint(o)};
            }
            break;
        }
        mismatch(n.path, std::string(enc.name()) + " encoding does not support this node");
    }

    const CircuitDescription& c_;
    Cat cat_;
};

template <ConstraintEncoding E>
CircuitReport run(const CircuitDescription& c, E enc, bool evaluate) {
    Runner<E> runner(c, std::move(enc));
    runner.typecheck(c.root);
    CircuitReport report;
    if (!evaluate) return report;
    try {
        auto p = runner.eval(c.root, report);
        report.satisfied = true;
        report.constraint = Runner<E>::constraint_value(p.constraint());
        report.morphism = Runner<E>::morphism_value(p.morphism());
    } catch (const NodeFailure& f) {
        report.witness_path = f.path;
        report.witness = f.message;
    }
    return report;
}

CircuitReport dispatch(const CircuitDescription& c, bool evaluate) {
    const auto& e = c.encoding;
    if (e == "sectorial") return run(c, SectorialEncoding(SectorTensor::kronecker), evaluate);
    if (e == "sectorial-biproduct") return run(c, SectorialEncoding(SectorTensor::biproduct), evaluate);
    if (e == "signalling") return run(c, SignallingEncoding{}, evaluate);
    if (e == "funcrel") return run(c, FuncRelEncoding{}, evaluate);
    if (e == "csp") return run(c, CSPEncoding{}, evaluate);
    if (e == "monoid") {
        auto get = [&](const std::string& name, const char* what) -> const Value& {
            auto it = c.objects.find(name);
            if (it == c.objects.end()) throw TypeCheckError(std::string("monoid circuit needs a declared ") + what);
            return it->second;
        };
        const auto* m = std::get_if<FiniteMonoid>(&get(c.monoid, "monoid"));
        const auto* l = std::get_if<MonoidLabeling>(&get(c.labeling, "labeling"));
        if (!m || !l) throw TypeCheckError("'monoid' and 'labeling' must name a monoid and a labeling");
        for (auto x : l->assignment()) {
            if (x >= m->size()) throw TypeCheckError("labeling uses an element outside the monoid");
        }
        return run(c, MonoidEncoding(*m, *l), evaluate);
    }
    throw ParseError("unknown encoding '" + e + "'");
}

}  // namespace

CircuitDescription parse_circuit(const Json& j) {
    if (!j.is_object()) throw ParseError("a circuit file holds an object");
    if (j.value("kind", std::string{}) != "circuit") throw ParseError("expected kind 'circuit'");
    CircuitDescription c;
    if (!j.contains("encoding") || !j["encoding"].is_string()) throw ParseError("missing 'encoding'");
    c.encoding = j["encoding"].get<std::string>();
    c.monoid = j.value("monoid", std::string{});
    c.labeling = j.value("labeling", std::string{});
    const Json empty = Json::object();
    const auto& decls = j.contains("declarations") ? j["declarations"] : empty;
    if (!decls.is_object()) throw ParseError("'declarations' must be an object");
    c.objects = Resolver(decls).resolve_all();
    if (j.contains("pairs")) {
        if (!j["pairs"].is_object()) throw ParseError("'pairs' must be an object");
        for (const auto& [name, p] : j["pairs"].items()) {
            if (!p.is_object() || !p.contains("constraint") || !p.contains("morphism") ||
                !p["constraint"].is_string() || !p["morphism"].is_string()) {
                throw ParseError("pair '" + name + "' needs 'constraint' and 'morphism' names");
            }
            PairDecl d{p["constraint"].get<std::string>(), p["morphism"].get<std::string>()};
            for (const auto& ref : {d.constraint, d.morphism}) {
                if (!c.objects.contains(ref)) throw ParseError("pair '" + name + "' refers to undeclared '" + ref + "'");
            }
            c.pairs.emplace(name, std::move(d));
        }
    }
    if (!j.contains("circuit")) throw ParseError("missing 'circuit'");
    c.root = parse_node(j["circuit"], "circuit");
    return c;
}

void typecheck_circuit(const CircuitDescription& c) { dispatch(c, false); }

CircuitReport check_circuit(const CircuitDescription& c) { return dispatch(c, true); }

}  // namespace compcon
