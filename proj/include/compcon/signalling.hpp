#pragma once

// Column-stochastic channels between factored finite spaces and the
// signalling constraints they can satisfy.
//
// A basis state of a FactorSpace is a tuple of factor values, flattened
// row-major with the first factor most significant. Channels are
// cod.total() x dom.total() matrices whose columns are distributions.
//
// For a relation tau between input and output factors:
//   check_signalling         for every input i, the outputs outside tau_i are
//                            jointly independent of i (d_{tau_i} f = f'_i d_{i});
//   check_signalling_atomic  for every absent arrow (i, j), output j alone is
//                            independent of input i;
//   check_cosignalling       the same constraint read backwards, with the
//                            uniform distribution as the unique state.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compcon/matrix.hpp"
#include "compcon/relation.hpp"

namespace compcon {

struct Factor {
    std::string label;
    std::size_t card = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

class FactorSpace {
public:
    FactorSpace() = default;
    explicit FactorSpace(std::vector<Factor> factors);

    static FactorSpace concat(const FactorSpace& a, const FactorSpace& b);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    std::size_t size() const noexcept { return factors_.size(); }
    std::size_t total() const noexcept { return total_; }
    std::size_t card(std::size_t k) const { return factors_.at(k).card; }
    const LabelList& labels() const noexcept { return labels_; }

    // Factor values of a flat index, and back.
    std::vector<std::size_t> digits(std::size_t index) const;
    std::size_t index(const std::vector<std::size_t>& digits) const;

    // Sub-space made of the factors in `keep` (sorted), in their original order.
    FactorSpace restrict_to(const IndexSet& keep) const;
    IndexSet complement(const IndexSet& factors) const;

    friend bool operator==(const FactorSpace& a, const FactorSpace& b) { return a.factors_ == b.factors_; }

private:
    std::vector<Factor> factors_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
    LabelList labels_;
};

class StochChannel {
public:
    StochChannel() = default;
    // Validates exactly: entries >= 0, every column sums to 1.
    StochChannel(FactorSpace dom, FactorSpace cod, Matrix matrix);

    static StochChannel identity(const FactorSpace& space);

    const FactorSpace& dom() const noexcept { return dom_; }
    const FactorSpace& cod() const noexcept { return cod_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    friend bool operator==(const StochChannel&, const StochChannel&) = default;

private:
    FactorSpace dom_;
    FactorSpace cod_;
    Matrix matrix_;
};

// Marginalizes out the factors in `factors`; discard(space, {}) is the identity.
StochChannel discard(const FactorSpace& space, const IndexSet& factors);
// Inserts the uniform distribution on each factor in `factors`.
StochChannel prepare_uniform(const FactorSpace& space, const IndexSet& factors);

StochChannel compose(const StochChannel& g, const StochChannel& f);
StochChannel tensor(const StochChannel& f, const StochChannel& g);

// Output factor p is input factor order[p]; order is a permutation.
StochChannel permute_factors(const FactorSpace& space, const std::vector<std::size_t>& order);
// Relabels the values of one factor: value v becomes perm[v].
StochChannel permute_values(const FactorSpace& space, std::size_t factor, const std::vector<std::size_t>& perm);
// Every column is the uniform distribution on cod.
StochChannel uniform_noise(const FactorSpace& dom, const FactorSpace& cod);

// [A:2] -> [B1:2, B2:2], x |-> uniform over {(y1, y2) : y1 xor y2 = x}.
StochChannel parity_counterexample();

// d_S f, keeping only output factors outside `discarded`.
StochChannel discard_outputs(const StochChannel& f, const IndexSet& discarded);

// True when every column of f agrees across all values of the given input
// factors (other inputs held fixed).
bool constant_in_inputs(const StochChannel& f, const IndexSet& inputs);

std::optional<std::string> find_signalling_violation(const StochChannel& f, const FiniteRelation& rel);
bool check_signalling(const StochChannel& f, const FiniteRelation& rel);

std::optional<std::string> find_atomic_violation(const StochChannel& f, const FiniteRelation& rel);
bool check_signalling_atomic(const StochChannel& f, const FiniteRelation& rel);

// True when f maps the uniform distribution to the uniform distribution.
bool preserves_uniform(const StochChannel& f);
// Throws PreconditionViolated unless preserves_uniform(f).
std::optional<std::string> find_cosignalling_violation(const StochChannel& f, const FiniteRelation& rel);
bool check_cosignalling(const StochChannel& f, const FiniteRelation& rel);

// d_T f constant jointly in pre_image(rel, T). Throws PreconditionViolated when
// f does not satisfy rel.
bool check_domain_atomicity(const StochChannel& f, const FiniteRelation& rel, const IndexSet& discarded_outputs);

}  // namespace compcon
