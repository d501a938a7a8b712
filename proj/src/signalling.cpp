#include "compcon/signalling.hpp"

#include <algorithm>

#include "compcon/error.hpp"

namespace compcon {

FactorSpace::FactorSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::vector<std::string> names;
    for (const auto& f : factors_) {
        if (f.card == 0) throw InvalidValue("factor '" + f.label + "' has cardinality 0");
        names.push_back(f.label);
    }
    labels_ = LabelList(std::move(names));
    strides_.assign(factors_.size(), 1);
    for (std::size_t k = factors_.size(); k-- > 0;) {
        strides_[k] = total_;
        total_ *= factors_[k].card;
    }
}

FactorSpace FactorSpace::concat(const FactorSpace& a, const FactorSpace& b) {
    auto factors = a.factors_;
    factors.insert(factors.end(), b.factors_.begin(), b.factors_.end());
    return FactorSpace(std::move(factors));
}

std::vector<std::size_t> FactorSpace::digits(std::size_t index) const {
    std::vector<std::size_t> out(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) out[k] = (index / strides_[k]) % factors_[k].card;
    return out;
}

std::size_t FactorSpace::index(const std::vector<std::size_t>& digits) const {
    std::size_t out = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) out += digits[k] * strides_[k];
    return out;
}

FactorSpace FactorSpace::restrict_to(const IndexSet& keep) const {
    std::vector<Factor> out;
    for (auto k : keep) out.push_back(factors_.at(k));
    return FactorSpace(std::move(out));
}

IndexSet FactorSpace::complement(const IndexSet& factors) const {
    std::vector<std::uint8_t> in(factors_.size(), 0);
    for (auto k : factors) {
        if (k >= factors_.size()) {
            throw IndexOutOfRange("factor index " + std::to_string(k) + " outside " + labels_.to_string());
        }
        in[k] = 1;
    }
    IndexSet out;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (!in[k]) out.push_back(k);
    }
    return out;
}

StochChannel::StochChannel(FactorSpace dom, FactorSpace cod, Matrix matrix)
    : dom_(std::move(dom)), cod_(std::move(cod)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != cod_.total() || matrix_.cols() != dom_.total()) {
        throw ShapeMismatch("channel matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", spaces need " + std::to_string(cod_.total()) + "x" +
                            std::to_string(dom_.total()));
    }
    for (std::size_t c = 0; c < matrix_.cols(); ++c) {
        Rational sum;
        for (std::size_t r = 0; r < matrix_.rows(); ++r) {
            if (matrix_(r, c).sign() < 0) {
                throw InvalidValue("negative channel entry at (" + std::to_string(r) + "," + std::to_string(c) + ")");
            }
            sum += matrix_(r, c);
        }
        if (!(sum == Rational(1))) {
            throw InvalidValue("channel column " + std::to_string(c) + " sums to " + sum.to_string());
        }
    }
}

StochChannel StochChannel::identity(const FactorSpace& space) {
    return StochChannel(space, space, Matrix::identity(space.total()));
}

namespace {

std::size_t restricted_index(const FactorSpace& space, const FactorSpace& sub, const IndexSet& keep,
                             std::size_t index) {
    const auto d = space.digits(index);
    std::vector<std::size_t> kept;
    kept.reserve(keep.size());
    for (auto k : keep) kept.push_back(d[k]);
    return sub.index(kept);
}

std::string labels_of(const FactorSpace& space, const IndexSet& factors) {
    std::vector<std::string> names;
    for (auto k : factors) names.push_back(space.factors()[k].label);
    return LabelList(std::move(names)).to_string();
}

}  // namespace

StochChannel discard(const FactorSpace& space, const IndexSet& factors) {
    const auto keep = space.complement(factors);
    auto cod = space.restrict_to(keep);
    Matrix m(cod.total(), space.total());
    for (std::size_t in = 0; in < space.total(); ++in) m(restricted_index(space, cod, keep, in), in) = 1;
    return StochChannel(space, std::move(cod), std::move(m));
}

StochChannel prepare_uniform(const FactorSpace& space, const IndexSet& factors) {
    const auto keep = space.complement(factors);
    auto dom = space.restrict_to(keep);
    std::int64_t fresh = 1;
    for (auto k : factors) fresh *= static_cast<std::int64_t>(space.card(k));
    const Rational weight(1, fresh);
    Matrix m(space.total(), dom.total());
    for (std::size_t out = 0; out < space.total(); ++out) m(out, restricted_index(space, dom, keep, out)) = weight;
    return StochChannel(std::move(dom), space, std::move(m));
}

StochChannel compose(const StochChannel& g, const StochChannel& f) {
    if (!(f.cod() == g.dom())) {
        throw BoundaryMismatch("channel compose: " + f.cod().labels().to_string() + " vs " +
                               g.dom().labels().to_string());
    }
    return StochChannel(f.dom(), g.cod(), multiply(g.matrix(), f.matrix()));
}

StochChannel tensor(const StochChannel& f, const StochChannel& g) {
    return StochChannel(FactorSpace::concat(f.dom(), g.dom()), FactorSpace::concat(f.cod(), g.cod()),
                        kronecker(f.matrix(), g.matrix()));
}

StochChannel permute_factors(const FactorSpace& space, const std::vector<std::size_t>& order) {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted.size() != space.size() || sorted[k] != k) {
            throw InvalidValue("factor order is not a permutation of " + space.labels().to_string());
        }
    }
    std::vector<Factor> out_factors;
    for (auto k : order) out_factors.push_back(space.factors()[k]);
    FactorSpace cod(std::move(out_factors));
    Matrix m(cod.total(), space.total());
    for (std::size_t in = 0; in < space.total(); ++in) {
        const auto d = space.digits(in);
        std::vector<std::size_t> out(order.size());
        for (std::size_t p = 0; p < order.size(); ++p) out[p] = d[order[p]];
        m(cod.index(out), in) = 1;
    }
    return StochChannel(space, std::move(cod), std::move(m));
}

StochChannel permute_values(const FactorSpace& space, std::size_t factor, const std::vector<std::size_t>& perm) {
    if (factor >= space.size()) throw IndexOutOfRange("factor index " + std::to_string(factor));
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t v = 0; v < sorted.size(); ++v) {
        if (sorted.size() != space.card(factor) || sorted[v] != v) {
            throw InvalidValue("value map is not a permutation of factor " + space.factors()[factor].label);
        }
    }
    Matrix m(space.total(), space.total());
    for (std::size_t in = 0; in < space.total(); ++in) {
        auto d = space.digits(in);
        d[factor] = perm[d[factor]];
        m(space.index(d), in) = 1;
    }
    return StochChannel(space, space, std::move(m));
}

StochChannel uniform_noise(const FactorSpace& dom, const FactorSpace& cod) {
    const Rational weight(1, static_cast<std::int64_t>(cod.total()));
    Matrix m(cod.total(), dom.total());
    for (std::size_t r = 0; r < cod.total(); ++r) {
        for (std::size_t c = 0; c < dom.total(); ++c) m(r, c) = weight;
    }
    return StochChannel(dom, cod, std::move(m));
}

StochChannel parity_counterexample() {
    FactorSpace dom({{"A", 2}});
    FactorSpace cod({{"B1", 2}, {"B2", 2}});
    const Rational half(1, 2);
    Matrix m(4, 2);
    for (std::size_t y1 = 0; y1 < 2; ++y1) {
        for (std::size_t y2 = 0; y2 < 2; ++y2) m(cod.index({y1, y2}), y1 ^ y2) = half;
    }
    return StochChannel(std::move(dom), std::move(cod), std::move(m));
}

StochChannel discard_outputs(const StochChannel& f, const IndexSet& discarded) {
    const auto keep = f.cod().complement(discarded);
    auto cod = f.cod().restrict_to(keep);
    Matrix m(cod.total(), f.dom().total());
    for (std::size_t r = 0; r < f.cod().total(); ++r) {
        const auto rr = restricted_index(f.cod(), cod, keep, r);
        for (std::size_t c = 0; c < f.dom().total(); ++c) {
            if (!f.matrix()(r, c).is_zero()) m(rr, c) += f.matrix()(r, c);
        }
    }
    return StochChannel(f.dom(), std::move(cod), std::move(m));
}

bool constant_in_inputs(const StochChannel& f, const IndexSet& inputs) {
    const auto& dom = f.dom();
    for (auto k : inputs) {
        if (k >= dom.size()) throw IndexOutOfRange("input factor " + std::to_string(k));
    }
    for (std::size_t c = 0; c < dom.total(); ++c) {
        auto d = dom.digits(c);
        for (auto k : inputs) d[k] = 0;
        const std::size_t base = dom.index(d);
        if (base == c) continue;
        for (std::size_t r = 0; r < f.cod().total(); ++r) {
            if (!(f.matrix()(r, c) == f.matrix()(r, base))) return false;
        }
    }
    return true;
}

namespace {

void require_boundary(const StochChannel& f, const FiniteRelation& rel) {
    require_same_labels(f.dom().labels(), rel.src(), "signalling constraint source");
    require_same_labels(f.cod().labels(), rel.dst(), "signalling constraint target");
}

}  // namespace

std::optional<std::string> find_signalling_violation(const StochChannel& f, const FiniteRelation& rel) {
    require_boundary(f, rel);
    for (std::size_t i = 0; i < f.dom().size(); ++i) {
        const auto reached = related_set(rel, i);
        const auto marginal = discard_outputs(f, reached);
        if (!constant_in_inputs(marginal, {i})) {
            return "joint output " + labels_of(f.cod(), f.cod().complement(reached)) + " depends on input " +
                   f.dom().factors()[i].label;
        }
    }
    return std::nullopt;
}

bool check_signalling(const StochChannel& f, const FiniteRelation& rel) {
    return !find_signalling_violation(f, rel).has_value();
}

std::optional<std::string> find_atomic_violation(const StochChannel& f, const FiniteRelation& rel) {
    require_boundary(f, rel);
    for (std::size_t j = 0; j < f.cod().size(); ++j) {
        std::optional<StochChannel> single;
        for (std::size_t i = 0; i < f.dom().size(); ++i) {
            if (rel.contains(i, j)) continue;
            if (!single) single = discard_outputs(f, f.cod().complement({j}));
            if (!constant_in_inputs(*single, {i})) {
                return "output " + f.cod().factors()[j].label + " depends on input " + f.dom().factors()[i].label;
            }
        }
    }
    return std::nullopt;
}

bool check_signalling_atomic(const StochChannel& f, const FiniteRelation& rel) {
    return !find_atomic_violation(f, rel).has_value();
}

bool preserves_uniform(const StochChannel& f) {
    const Rational in_weight(1, static_cast<std::int64_t>(f.dom().total()));
    const Rational out_weight(1, static_cast<std::int64_t>(f.cod().total()));
    for (std::size_t r = 0; r < f.cod().total(); ++r) {
        Rational sum;
        for (std::size_t c = 0; c < f.dom().total(); ++c) sum += f.matrix()(r, c);
        if (!(sum * in_weight == out_weight)) return false;
    }
    return true;
}

std::optional<std::string> find_cosignalling_violation(const StochChannel& f, const FiniteRelation& rel) {
    require_boundary(f, rel);
    if (!preserves_uniform(f)) {
        throw PreconditionViolated("cosignalling check needs a channel preserving the uniform distribution");
    }
    const auto back = converse(rel);
    const auto& cod = f.cod();
    for (std::size_t j = 0; j < cod.size(); ++j) {
        const auto sources = related_set(back, j);
        const auto g = compose(f, prepare_uniform(f.dom(), sources));
        const auto rest = cod.complement({j});
        const auto rest_space = cod.restrict_to(rest);
        const Rational share(1, static_cast<std::int64_t>(cod.card(j)));
        for (std::size_t c = 0; c < g.dom().total(); ++c) {
            std::vector<Rational> marginal(rest_space.total());
            for (std::size_t r = 0; r < cod.total(); ++r) {
                marginal[restricted_index(cod, rest_space, rest, r)] += g.matrix()(r, c);
            }
            for (std::size_t r = 0; r < cod.total(); ++r) {
                if (!(g.matrix()(r, c) == share * marginal[restricted_index(cod, rest_space, rest, r)])) {
                    return "output " + cod.factors()[j].label + " is not uniform and independent once inputs " +
                           labels_of(f.dom(), sources) + " are randomized";
                }
            }
        }
    }
    return std::nullopt;
}

bool check_cosignalling(const StochChannel& f, const FiniteRelation& rel) {
    return !find_cosignalling_violation(f, rel).has_value();
}

bool check_domain_atomicity(const StochChannel& f, const FiniteRelation& rel, const IndexSet& discarded_outputs) {
    if (!check_signalling(f, rel)) {
        throw PreconditionViolated("domain atomicity needs a channel satisfying its signalling constraint");
    }
    const auto blind = pre_image(rel, discarded_outputs);
    return constant_in_inputs(discard_outputs(f, discarded_outputs), blind);
}

}  // namespace compcon
