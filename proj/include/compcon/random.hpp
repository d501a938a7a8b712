#pragma once

// Seeded generators of small random instances for the oracle and law suites.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "compcon/cspcat.hpp"
#include "compcon/funcrel.hpp"
#include "compcon/rational.hpp"
#include "compcon/relation.hpp"
#include "compcon/sectorial.hpp"
#include "compcon/signalling.hpp"

namespace compcon {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 20211;

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive
bool coin(Rng& rng, double p = 0.5);

// prefix0, prefix1, ...
LabelList numbered_labels(const std::string& prefix, std::size_t n);

// Each pair present independently with probability p.
FiniteRelation random_relation(const LabelList& src, const LabelList& dst, Rng& rng, double p = 0.5);

// p/q with |p| <= 3, 1 <= q <= 3; zero with probability zero_p.
Rational random_rational(Rng& rng, double zero_p = 0.25);

SectorSpace random_sector_space(Rng& rng, const std::string& prefix, std::size_t max_sectors,
                                std::size_t max_dim, std::size_t min_sectors = 1);

// Each block is zeroed with probability zero_block_p; the others get random
// entries (which may still vanish).
BlockMatrix random_block_matrix(const SectorSpace& dom, const SectorSpace& cod, Rng& rng,
                                double zero_block_p = 0.4);

// Random matrix whose nonzero blocks lie inside rel.
BlockMatrix random_block_matrix_within(const SectorSpace& dom, const SectorSpace& cod, const FiniteRelation& rel,
                                       Rng& rng);

FactorSpace random_factor_space(Rng& rng, const std::string& prefix, std::size_t min_factors,
                                std::size_t max_factors, std::size_t max_card);

// Column-stochastic matrix with small-denominator entries.
Matrix random_stochastic_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// Channel in which each output factor j is sampled from the inputs related to
// j alone, so it satisfies rel under every signalling check.
StochChannel random_channel_within(const FactorSpace& dom, const FactorSpace& cod, const FiniteRelation& rel,
                                   Rng& rng);

PartitionedFinSet random_partitioned_set(Rng& rng, const std::string& prefix, std::size_t min_blocks,
                                         std::size_t max_blocks, std::size_t max_size);

// Uniform among functions satisfying rel; nullopt when L(rel) is empty.
std::optional<PartitionedFunction> random_function_within(const PartitionedFinSet& dom, const PartitionedFinSet& cod,
                                                          const FiniteRelation& rel, Rng& rng);

// Up to max_constraints constraints of arity 1..max_arity with random bodies.
CSPProblem random_csp(std::size_t dom, std::size_t cod, std::size_t max_arity, std::size_t max_constraints, Rng& rng);

}  // namespace compcon
