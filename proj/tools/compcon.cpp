// compcon: check circuit files, combine relations, run oracle suites.
//
// Exit status: 0 success, 1 constraint violation or failed suite, 2 input error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compcon/circuit.hpp"
#include "compcon/harness.hpp"
#include "compcon/io.hpp"

using namespace compcon;
using io::Json;

namespace {

enum class Format { text, json };

struct Options {
    Format format = Format::text;
};

int print_error(const Options& o, const std::string& message) {
    if (o.format == Format::json) {
        std::cout << Json{{"status", "error"}, {"error", message}}.dump() << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
    return 2;
}

// ---- check -------------------------------------------------------------------

int cmd_check(const Options& o, const std::string& path) {
    const auto circuit = parse_circuit(io::load_file(path));
    const auto report = check_circuit(circuit);
    if (o.format == Format::json) {
        Json out;
        out["status"] = report.satisfied ? "satisfied" : "violated";
        if (report.satisfied) {
            out["constraint"] = io::to_json(*report.constraint);
            out["morphism"] = io::to_json(*report.morphism);
        } else {
            out["path"] = report.witness_path;
            out["witness"] = report.witness;
        }
        out["leaves"] = report.leaves;
        std::cout << out.dump() << "\n";
    } else {
        for (const auto& l : report.leaves) std::cout << "verified " << l << "\n";
        if (report.satisfied) {
            std::cout << "composite constraint: " << io::dump(*report.constraint) << "\n";
            std::cout << "  " << io::describe(*report.constraint) << "\n";
            std::cout << "composite morphism: " << io::describe(*report.morphism) << "\n";
        } else {
            std::cout << "violation at " << report.witness_path << ": " << report.witness << "\n";
        }
    }
    return report.satisfied ? 0 : 1;
}

// ---- rel ---------------------------------------------------------------------

int cmd_rel(const Options& o, const std::string& op, const std::vector<std::string>& files) {
    std::vector<FiniteRelation> in;
    for (const auto& f : files) in.push_back(io::from_json_as<FiniteRelation>(io::load_file(f)));
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (in.size() < lo || in.size() > hi) {
            throw CLI::ValidationError("rel " + op, "wrong number of relation files");
        }
    };
    std::vector<FiniteRelation> out;
    if (op == "compose") {
        // Files are given in the order the relations are traversed.
        need(1, SIZE_MAX);
        auto acc = in[0];
        for (std::size_t i = 1; i < in.size(); ++i) acc = compose(in[i], acc);
        out.push_back(acc);
    } else if (op == "meet") {
        need(1, SIZE_MAX);
        auto acc = in[0];
        for (std::size_t i = 1; i < in.size(); ++i) acc = meet(acc, in[i]);
        out.push_back(acc);
    } else if (op == "tensor_disjoint" || op == "tensor_product") {
        need(1, SIZE_MAX);
        auto acc = in[0];
        for (std::size_t i = 1; i < in.size(); ++i) {
            acc = op == "tensor_disjoint" ? tensor_disjoint(acc, in[i]) : tensor_product(acc, in[i]);
        }
        out.push_back(acc);
    } else if (op == "converse") {
        need(1, 1);
        out.push_back(converse(in[0]));
    } else if (op == "generators") {
        need(1, 1);
        out = meet_generators(in[0].src(), in[0].dst());
    }
    if (o.format == Format::json) {
        Json results = Json::array();
        for (const auto& r : out) results.push_back(io::to_json(r));
        std::cout << Json{{"status", "ok"}, {"results", std::move(results)}}.dump() << "\n";
    } else {
        for (const auto& r : out) std::cout << io::dump(r) << "\n";
    }
    return 0;
}

// ---- oracle ------------------------------------------------------------------

struct OracleOptions {
    std::string suite;
    std::string encoding = "funcrel";
    std::uint64_t cap = 1000;
    std::uint64_t seed = default_seed;
    std::size_t trials = 500;
    std::size_t blocks = 3;
    std::size_t size = 2;
    std::size_t samples = 1'000'000;
    bool counterexample = false;
};

std::vector<SuiteReport> run_suite(const OracleOptions& a) {
    if (a.cap > max_enumeration_cap) {
        throw ExplosionError("cap " + std::to_string(a.cap) + " exceeds the limit of " +
                             std::to_string(max_enumeration_cap));
    }
    auto one = [](SuiteReport r) { return std::vector<SuiteReport>{std::move(r)}; };
    if (a.suite == "laxity") {
        if (a.encoding == "funcrel") return one(funcrel_laxity_exhaustive(a.blocks, a.size, a.cap));
        if (a.encoding == "sectorial") return one(sectorial_laxity(a.trials, a.seed));
        if (a.encoding == "signalling") return one(signalling_laxity(a.trials, a.seed));
    } else if (a.suite == "intersectability") {
        if (a.encoding == "funcrel") return one(funcrel_intersectability_exhaustive(a.blocks, a.size, a.cap));
        if (a.encoding == "sectorial") return one(sectorial_intersectability(a.trials, a.seed));
        if (a.encoding == "signalling") return one(signalling_intersectability(a.trials, a.seed, a.counterexample));
    } else if (a.suite == "atomicity") {
        return one(domain_atomicity(a.trials, a.seed));
    } else if (a.suite == "timesym") {
        return one(timesym_agreement(a.trials, a.seed));
    } else if (a.suite == "csp") {
        CSPSweepOptions c;
        c.exhaustive_size = a.size;
        c.samples = a.samples;
        c.seed = a.seed;
        return one(csp_laxity(c));
    } else if (a.suite == "monoid") {
        return one(monoid_compositionality(a.blocks, a.size));
    } else if (a.suite == "generators") {
        return one(meet_generator_completeness(a.size));
    } else if (a.suite == "counterexample") {
        return one(counterexample_suite());
    } else if (a.suite == "laws") {
        return constrained_laws(a.trials, a.seed);
    }
    throw CLI::ValidationError("oracle", "suite '" + a.suite + "' does not run on encoding '" + a.encoding + "'");
}

Json report_json(const SuiteReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    j["cases"] = r.cases;
    j["violations"] = r.violations;
    j["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
    j["expected"] = r.expected;
    j["notes"] = r.notes;
    return j;
}

int cmd_oracle(const Options& o, const OracleOptions& a) {
    const auto reports = run_suite(a);
    bool passed = true;
    std::uint64_t cases = 0, violations = 0;
    for (const auto& r : reports) {
        passed = passed && r.passed();
        cases += r.cases;
        violations += r.violations;
    }
    if (o.format == Format::json) {
        Json all = Json::array();
        for (const auto& r : reports) all.push_back(report_json(r));
        std::cout << Json{{"suite", a.suite}, {"seed", a.seed},          {"passed", passed},
                          {"cases", cases},   {"violations", violations}, {"reports", std::move(all)}}
                         .dump()
                  << "\n";
    } else {
        std::cout << a.suite << ": " << (passed ? "pass" : "FAIL") << " (" << cases << " cases, " << violations
                  << " violations, seed " << a.seed << ")\n";
        for (const auto& r : reports) {
            if (reports.size() > 1) {
                std::cout << "  " << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.cases
                          << " cases, " << r.violations << " violations)\n";
            }
            if (r.first_failure) std::cout << "    first failure: " << *r.first_failure << "\n";
            for (const auto& e : r.expected) std::cout << "    expected witness: " << e << "\n";
            for (const auto& n : r.notes) std::cout << "    note: " << n << "\n";
        }
    }
    return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compcon: constrained morphisms and their composite constraints"};
    app.require_subcommand(1);
    Options opts;
    std::string format = "text";
    app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    std::string circuit_file;
    auto* check = app.add_subcommand("check", "verify a circuit file and print its composite");
    check->add_option("file", circuit_file, "circuit file")->required();
    check->fallthrough();

    std::string rel_op;
    std::vector<std::string> rel_files;
    auto* rel = app.add_subcommand("rel", "combine relation files");
    rel->add_option("op", rel_op, "compose | meet | converse | generators | tensor_disjoint | tensor_product")
        ->required()
        ->check(CLI::IsMember({"compose", "meet", "converse", "generators", "tensor_disjoint", "tensor_product"}));
    rel->add_option("files", rel_files, "relation files; compose takes them in traversal order")->required();
    rel->fallthrough();

    OracleOptions oracle_opts;
    auto* oracle = app.add_subcommand("oracle", "run an oracle or law suite");
    oracle
        ->add_option("suite", oracle_opts.suite,
                     "laxity | intersectability | atomicity | timesym | csp | monoid | generators | "
                     "counterexample | laws")
        ->required();
    oracle->add_option("--encoding", oracle_opts.encoding, "funcrel | sectorial | signalling")
        ->capture_default_str();
    oracle->add_option("--cap", oracle_opts.cap, "per-instance enumeration cap")->capture_default_str();
    oracle->add_option("--seed", oracle_opts.seed, "seed for randomized suites")->capture_default_str();
    oracle->add_option("--trials", oracle_opts.trials, "random instances")->capture_default_str();
    oracle->add_option("--blocks", oracle_opts.blocks, "blocks per set (laxity), monoid order (monoid)")
        ->capture_default_str();
    oracle->add_option("--size", oracle_opts.size, "block size, set size, points or labels")->capture_default_str();
    oracle->add_option("--samples", oracle_opts.samples, "sampled CSP instances")->capture_default_str();
    oracle->add_flag("--counterexample", oracle_opts.counterexample, "include the parity channel");
    oracle->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    opts.format = format == "json" ? Format::json : Format::text;
    try {
        if (*check) return cmd_check(opts, circuit_file);
        if (*rel) return cmd_rel(opts, rel_op, rel_files);
        return cmd_oracle(opts, oracle_opts);
    } catch (const CLI::Error& e) {
        return print_error(opts, e.what());
    } catch (const Error& e) {
        return print_error(opts, e.what());
    } catch (const Json::exception& e) {
        return print_error(opts, e.what());
    }
}
