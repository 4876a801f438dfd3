#include "anc/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anc/rng.hpp"

namespace anc {

std::string_view to_string(Algorithm algorithm) noexcept {
    switch (algorithm) {
    case Algorithm::lms: return "lms";
    case Algorithm::nlms: return "nlms";
    case Algorithm::rls: return "rls";
    }
    return "?";
}

Algorithm algorithm_from_string(std::string_view name) {
    if (name == "lms") return Algorithm::lms;
    if (name == "nlms") return Algorithm::nlms;
    if (name == "rls") return Algorithm::rls;
    throw config_error("unknown algorithm '" + std::string(name) +
                       "' (expected lms, nlms or rls)");
}

TapLine::TapLine(std::size_t order) {
    if (order == 0) {
        throw config_error("filter order must be at least 1");
    }
    taps_.assign(order, 0.0);
}

void TapLine::push(double sample) noexcept {
    for (std::size_t i = taps_.size() - 1; i > 0; --i) {
        taps_[i] = taps_[i - 1];
    }
    taps_[0] = sample;
}

double TapLine::energy() const noexcept {
    double acc = 0.0;
    for (double t : taps_) {
        acc += t * t;
    }
    return acc;
}

void TapLine::clear() noexcept {
    std::fill(taps_.begin(), taps_.end(), 0.0);
}

void LmsConfig::validate() const {
    if (order == 0) {
        throw config_error("lms: order must be at least 1");
    }
    if (!(step_size > 0.0) || !std::isfinite(step_size)) {
        throw config_error("lms: step size must be positive");
    }
}

void NlmsConfig::validate() const {
    if (order == 0) {
        throw config_error("nlms: order must be at least 1");
    }
    if (!(step_size > 0.0 && step_size < 2.0)) {
        throw config_error("nlms: step size must lie in (0, 2)");
    }
    if (!(regularizer > 0.0)) {
        throw config_error("nlms: regularizer must be positive");
    }
}

void RlsConfig::validate() const {
    if (order == 0) {
        throw config_error("rls: order must be at least 1");
    }
    if (!(forgetting > 0.0 && forgetting <= 1.0)) {
        throw config_error("rls: forgetting factor must lie in (0, 1]");
    }
    if (!(init_scale > 0.0) || !std::isfinite(init_scale)) {
        throw config_error("rls: init scale must be positive");
    }
}

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

double filter_output(const TapLine& taps, std::span<const double> weights) {
    if (taps.order() != weights.size()) {
        throw config_error("filter_output: tap line and weight vector lengths differ");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += taps[i] * weights[i];
    }
    return acc;
}

void lms_update(std::span<double> weights, const TapLine& taps, double error,
                const LmsConfig& config) {
    config.validate();
    if (taps.order() != weights.size()) {
        throw config_error("lms_update: tap line and weight vector lengths differ");
    }
    if (!std::isfinite(error)) {
        throw divergence_fault("lms: non-finite error", 0);
    }
    const double g = config.step_size * error;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] += g * taps[i];
    }
}

void nlms_update(std::span<double> weights, const TapLine& taps, double error,
                 const NlmsConfig& config) {
    config.validate();
    if (taps.order() != weights.size()) {
        throw config_error("nlms_update: tap line and weight vector lengths differ");
    }
    if (!std::isfinite(error)) {
        throw divergence_fault("nlms: non-finite error", 0);
    }
    const double g = config.step_size * error / (taps.energy() + config.regularizer);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] += g * taps[i];
    }
}

RlsState::RlsState(const RlsConfig& config)
    : forgetting(config.forgetting), init_scale(config.init_scale) {
    config.validate();
    gain.assign(config.order, 0.0);
    inv_corr.assign(config.order * config.order, 0.0);
    reset();
}

void RlsState::reset() {
    const std::size_t n = gain.size();
    std::fill(inv_corr.begin(), inv_corr.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        inv_corr[i * n + i] = init_scale;
    }
    std::fill(gain.begin(), gain.end(), 0.0);
}

std::span<const double> rls_gain(RlsState& state, const TapLine& taps) {
    const std::size_t n = state.order();
    if (taps.order() != n) {
        throw config_error("rls_gain: tap line and state dimensions differ");
    }
    // pu = p * u, denom = forgetting + u^T p u
    double denom = state.forgetting;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* row = state.inv_corr.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            acc += row[j] * taps[j];
        }
        state.gain[i] = acc; // holds p*u until the division below
        denom += taps[i] * acc;
    }
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw numerical_breakdown("rls: gain denominator not positive", 0);
    }
    for (double& g : state.gain) {
        g /= denom;
    }
    return state.gain;
}

void rls_update(RlsState& state, std::span<double> weights, const TapLine& taps,
                double error) {
    const std::size_t n = state.order();
    if (weights.size() != n || taps.order() != n) {
        throw config_error("rls_update: dimensions differ");
    }
    if (!std::isfinite(error)) {
        throw divergence_fault("rls: non-finite error", 0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        weights[i] += error * state.gain[i];
    }
    // p = (p - k u^T p) / forgetting; u^T p reconstructed row by row
    std::vector<double> utp(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += taps[i] * state.inv_corr[i * n + j];
        }
        utp[j] = acc;
    }
    const double inv_forget = 1.0 / state.forgetting;
    for (std::size_t i = 0; i < n; ++i) {
        double* row = state.inv_corr.data() + i * n;
        const double ki = state.gain[i];
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = (row[j] - ki * utp[j]) * inv_forget;
        }
    }
    // re-symmetrize; the recursion is symmetric in exact arithmetic only
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (state.inv_corr[i * n + j] + state.inv_corr[j * n + i]);
            state.inv_corr[i * n + j] = m;
            state.inv_corr[j * n + i] = m;
        }
    }
    for (double v : state.inv_corr) {
        if (!std::isfinite(v)) {
            throw numerical_breakdown("rls: non-finite inverse correlation matrix", 0);
        }
    }
}

// ---------------------------------------------------------------------------
// streaming filters
// ---------------------------------------------------------------------------

AdaptiveFilter::AdaptiveFilter(std::size_t order) : taps_(order), weights_(order, 0.0) {}

void AdaptiveFilter::reset() {
    taps_.clear();
    std::fill(weights_.begin(), weights_.end(), 0.0);
    count_ = 0;
}

FilterStep AdaptiveFilter::process_sample(double desired, double reference) {
    if (!std::isfinite(desired) || !std::isfinite(reference)) {
        throw divergence_fault("non-finite input sample", count_);
    }
    taps_.push(reference);
    const double y = filter_output(taps_, weights_);
    const double e = desired - y;
    try {
        update(e);
    } catch (const numerical_breakdown& f) {
        throw numerical_breakdown(f.what(), count_);
    } catch (const divergence_fault& f) {
        throw divergence_fault(f.what(), count_);
    }
    for (double w : weights_) {
        if (!std::isfinite(w)) {
            throw divergence_fault("weight vector left the finite range", count_);
        }
    }
    ++count_;
    return FilterStep{y, e};
}

LmsFilter::LmsFilter(const LmsConfig& config) : AdaptiveFilter(config.order), config_(config) {
    config_.validate();
}

void LmsFilter::update(double error) {
    lms_update(weights_, taps_, error, config_);
}

NlmsFilter::NlmsFilter(const NlmsConfig& config)
    : AdaptiveFilter(config.order), config_(config) {
    config_.validate();
}

void NlmsFilter::update(double error) {
    nlms_update(weights_, taps_, error, config_);
}

RlsFilter::RlsFilter(const RlsConfig& config)
    : AdaptiveFilter(config.order), config_(config), state_(config) {}

void RlsFilter::reset() {
    AdaptiveFilter::reset();
    state_.reset();
}

void RlsFilter::update(double error) {
    rls_gain(state_, taps_);
    rls_update(state_, weights_, taps_, error);
}

std::unique_ptr<AdaptiveFilter> make_filter(Algorithm algorithm, std::size_t order,
                                            double step) {
    switch (algorithm) {
    case Algorithm::lms:
        return std::make_unique<LmsFilter>(LmsConfig{order, step});
    case Algorithm::nlms:
        return std::make_unique<NlmsFilter>(NlmsConfig{order, step});
    case Algorithm::rls:
        return std::make_unique<RlsFilter>(RlsConfig{order, step});
    }
    throw config_error("make_filter: bad algorithm");
}

BlockResult process_block(AdaptiveFilter& filter, const Signal& desired,
                          const Signal& reference,
                          std::span<const std::size_t> snapshot_at) {
    if (desired.size() != reference.size()) {
        throw config_error("process_block: desired and reference lengths differ");
    }
    if (desired.sample_rate != reference.sample_rate) {
        throw config_error("process_block: desired and reference sample rates differ");
    }
    BlockResult result;
    result.output.sample_rate = desired.sample_rate;
    result.error.sample_rate = desired.sample_rate;
    result.output.samples.resize(desired.size());
    result.error.samples.resize(desired.size());
    result.weight_snapshots.reserve(snapshot_at.size());

    std::size_t next_snap = 0;
    for (std::size_t i = 0; i < desired.size(); ++i) {
        const FilterStep step = filter.process_sample(desired.samples[i], reference.samples[i]);
        result.output.samples[i] = step.output;
        result.error.samples[i] = step.error;
        while (next_snap < snapshot_at.size() && snapshot_at[next_snap] == i) {
            auto w = filter.weights();
            result.weight_snapshots.emplace_back(w.begin(), w.end());
            ++next_snap;
        }
    }
    return result;
}

double lms_step_bound(const Signal& reference, std::size_t order) {
    if (order == 0) {
        throw config_error("lms_step_bound: order must be at least 1");
    }
    if (reference.empty()) {
        throw undefined_bound_error("lms_step_bound: empty reference");
    }
    const std::size_t len = reference.size();

    // biased sample autocorrelation r(0..order-1)
    std::vector<double> r(order, 0.0);
    for (std::size_t lag = 0; lag < order; ++lag) {
        double acc = 0.0;
        for (std::size_t i = lag; i < len; ++i) {
            acc += reference.samples[i] * reference.samples[i - lag];
        }
        r[lag] = acc / static_cast<double>(len);
    }
    if (r[0] <= 0.0) {
        throw undefined_bound_error("lms_step_bound: reference carries no energy");
    }

    // top eigenvalue of the Toeplitz matrix R[i][j] = r(|i-j|) by power
    // iteration; deterministic seeded start so the bound is reproducible
    Rng rng(0x5e1f5eedULL);
    std::vector<double> v(order);
    double norm = 0.0;
    for (double& x : v) {
        x = rng.next_uniform(0.5, 1.5);
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : v) {
        x /= norm;
    }

    std::vector<double> rv(order);
    double lambda = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        for (std::size_t i = 0; i < order; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < order; ++j) {
                acc += r[i > j ? i - j : j - i] * v[j];
            }
            rv[i] = acc;
        }
        double next = 0.0;
        for (std::size_t i = 0; i < order; ++i) {
            next += v[i] * rv[i]; // Rayleigh quotient, ||v|| == 1
        }
        double rv_norm = 0.0;
        for (double x : rv) {
            rv_norm += x * x;
        }
        rv_norm = std::sqrt(rv_norm);
        if (rv_norm <= 0.0) {
            throw undefined_bound_error("lms_step_bound: degenerate autocorrelation");
        }
        for (std::size_t i = 0; i < order; ++i) {
            v[i] = rv[i] / rv_norm;
        }
        if (iter > 0 && std::abs(next - lambda) <= 1e-8 * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    if (!(lambda > 0.0)) {
        throw undefined_bound_error("lms_step_bound: nonpositive top eigenvalue");
    }
    return 1.0 / lambda;
}

} // namespace anc
