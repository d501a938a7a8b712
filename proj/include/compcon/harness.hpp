#pragma once

// Oracle and law suites. Every suite is deterministic given its seed and
// reports how many cases it examined, how many violated the property, and the
// first violation found.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compcon/funcrel.hpp"
#include "compcon/random.hpp"

namespace compcon {

struct SuiteReport {
    SuiteReport() = default;
    explicit SuiteReport(std::string name) : suite(std::move(name)) {}

    std::string suite;
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
    std::optional<std::string> first_failure;
    // Findings that are expected by the theory (e.g. a known counterexample).
    std::vector<std::string> expected;
    std::vector<std::string> notes;

    bool passed() const noexcept { return violations == 0; }
    void fail(const std::string& what) {
        ++violations;
        if (!first_failure) first_failure = what;
    }
    void merge(const SuiteReport& other);
};

// Largest cap the command line accepts for exhaustive enumeration.
inline constexpr std::uint64_t max_enumeration_cap = 100'000'000;

// The parity channel against sigma1, sigma2 and their meet, under all three
// signalling checks.
SuiteReport counterexample_suite();

// check(f, meet(t, s)) <=> check(f, t) and check(f, s).
SuiteReport sectorial_intersectability(std::size_t trials, std::uint64_t seed);
// support(g . f) <= support(g) . support(f), plus satisfaction of composed constraints.
SuiteReport sectorial_laxity(std::size_t trials, std::uint64_t seed);

// Every partitioned-set triple with up to max_blocks blocks of size up to
// max_size, every pair of relations: composites of satisfying functions
// satisfy the composed relation. Decided element by element for every
// instance, and additionally by full enumeration of composites (oracle_laxity)
// on every instance whose number of composites is at most literal_cap.
SuiteReport funcrel_laxity_exhaustive(std::size_t max_blocks, std::size_t max_size, std::uint64_t literal_cap);
// L(meet(t, s)) == L(t) ∩ L(s) by enumeration over the same family.
SuiteReport funcrel_intersectability_exhaustive(std::size_t max_blocks, std::size_t max_size, std::uint64_t cap);

// Random signalling instances. Signalling constraints are not intersectable;
// with the counterexample enabled the parity channel is reported as the
// expected witness and the suite fails if it does not show up.
SuiteReport signalling_intersectability(std::size_t trials, std::uint64_t seed, bool with_counterexample);
SuiteReport signalling_laxity(std::size_t trials, std::uint64_t seed);

// Every relation up to max x max labels is the meet of the generators it avoids.
SuiteReport meet_generator_completeness(std::size_t max_labels);

// Channels generated from constrained generators; every subset T of outputs.
SuiteReport domain_atomicity(std::size_t channels, std::uint64_t seed);

// Words of factor permutations, value permutations, discards and uniform
// preparations: the three signalling checks agree on the derived relation
// (and on each relation one pair away from it).
SuiteReport timesym_agreement(std::size_t words, std::uint64_t seed);

struct CSPSweepOptions {
    // Exhaustive part: every problem pair over sizes <= exhaustive_size with
    // arity <= exhaustive_arity and <= max_constraints constraints.
    std::size_t exhaustive_size = 3;
    std::size_t exhaustive_arity = 1;
    std::size_t max_constraints = 2;
    // Second exhaustive part over smaller sets with higher arity.
    std::size_t small_size = 2;
    std::size_t small_arity = 2;
    std::size_t small_max_constraints = 2;
    // Sampled part over sizes <= 3, arity <= 2, <= 2 constraints, with
    // problems built around given solutions so that composites are non-trivial.
    std::size_t samples = 1'000'000;
    std::uint64_t seed = default_seed;
};
SuiteReport csp_laxity(const CSPSweepOptions& options);

// Every monoid of order <= max_order (up to isomorphism), every labeling of
// every set with <= max_points points, every pair of endorelations.
SuiteReport monoid_compositionality(std::size_t max_order, std::size_t max_points);

// Category, monoidal, dagger and compact laws on certified pairs, one report
// per (encoding, law).
std::vector<SuiteReport> constrained_laws(std::size_t trials, std::uint64_t seed);

}  // namespace compcon
