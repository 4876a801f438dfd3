#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "anc/errors.hpp"
#include "anc/signal.hpp"

namespace anc {

enum class Algorithm { lms, nlms, rls };

std::string_view to_string(Algorithm algorithm) noexcept;
Algorithm algorithm_from_string(std::string_view name); // throws config_error

/// Fixed-length delay line over the reference input, newest sample first:
/// u(n) = [ref(n), ref(n-1), ..., ref(n-N+1)]. Taps not yet filled are zero.
class TapLine {
public:
    explicit TapLine(std::size_t order);

    void push(double sample) noexcept;
    double energy() const noexcept; // ||u||^2
    std::size_t order() const noexcept { return taps_.size(); }
    std::span<const double> taps() const noexcept { return taps_; }
    double operator[](std::size_t i) const noexcept { return taps_[i]; }
    void clear() noexcept;

private:
    std::vector<double> taps_;
};

struct FilterStep {
    double output; // y(n), the noise estimate
    double error;  // e(n) = d(n) - y(n), the denoised sample
};

struct LmsConfig {
    std::size_t order = 10;
    double step_size = 0.05;
    void validate() const; // order >= 1, step_size > 0
};

struct NlmsConfig {
    std::size_t order = 10;
    double step_size = 0.5; // must lie in (0, 2)
    double regularizer = 1e-8;
    void validate() const;
};

struct RlsConfig {
    std::size_t order = 10;
    double forgetting = 0.999; // in (0, 1]; 1 is the growing-window limit
    double init_scale = 100.0; // p(0) = init_scale * I
    void validate() const;
};

// ---------------------------------------------------------------------------
// Single-step kernels. The filter classes below drive these; they are exposed
// so each update rule is testable in isolation.
// ---------------------------------------------------------------------------

/// Inner product of the tap line and the weights: y = u^T w.
double filter_output(const TapLine& taps, std::span<const double> weights);

/// w += step * e * u. Throws divergence_fault on a non-finite error.
void lms_update(std::span<double> weights, const TapLine& taps, double error,
                const LmsConfig& config);

/// w += step * e * u / (||u||^2 + regularizer). The regularizer keeps an
/// all-zero tap line from dividing by zero.
void nlms_update(std::span<double> weights, const TapLine& taps, double error,
                 const NlmsConfig& config);

/// Gain vector and inverse correlation matrix of RLS.
struct RlsState {
    std::vector<double> inv_corr; // p(n), order x order, row-major
    std::vector<double> gain;     // k(n)
    double forgetting;
    double init_scale;

    explicit RlsState(const RlsConfig& config);
    std::size_t order() const noexcept { return gain.size(); }
    void reset(); // p = init_scale * I, gain = 0
};

/// k = p u / (forgetting + u^T p u); stores k in the state and returns it.
/// Throws numerical_breakdown if the denominator is not positive.
std::span<const double> rls_gain(RlsState& state, const TapLine& taps);

/// w += e k, then p = (p - k u^T p) / forgetting, re-symmetrized as
/// (p + p^T) / 2. The gain must be fresh from rls_gain on the same taps.
void rls_update(RlsState& state, std::span<double> weights, const TapLine& taps,
                double error);

// ---------------------------------------------------------------------------
// Streaming filters. Single-owner state machines; move between threads, do
// not share.
// ---------------------------------------------------------------------------

class AdaptiveFilter {
public:
    virtual ~AdaptiveFilter() = default;

    /// One ANC step, in fixed order: push the reference into the tap line,
    /// y = u^T w, e = d - y, weight update. Throws divergence_fault (carrying
    /// the sample index) if any weight leaves the finite range.
    FilterStep process_sample(double desired, double reference);

    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t order() const noexcept { return taps_.order(); }
    std::size_t samples_processed() const noexcept { return count_; }
    virtual Algorithm algorithm() const noexcept = 0;
    virtual void reset();

protected:
    AdaptiveFilter(std::size_t order);
    virtual void update(double error) = 0;

    TapLine taps_;
    std::vector<double> weights_; // w(0) = 0 for every algorithm
    std::size_t count_ = 0;
};

class LmsFilter final : public AdaptiveFilter {
public:
    explicit LmsFilter(const LmsConfig& config);
    Algorithm algorithm() const noexcept override { return Algorithm::lms; }
    const LmsConfig& config() const noexcept { return config_; }

private:
    void update(double error) override;
    LmsConfig config_;
};

class NlmsFilter final : public AdaptiveFilter {
public:
    explicit NlmsFilter(const NlmsConfig& config);
    Algorithm algorithm() const noexcept override { return Algorithm::nlms; }
    const NlmsConfig& config() const noexcept { return config_; }

private:
    void update(double error) override;
    NlmsConfig config_;
};

class RlsFilter final : public AdaptiveFilter {
public:
    explicit RlsFilter(const RlsConfig& config);
    Algorithm algorithm() const noexcept override { return Algorithm::rls; }
    const RlsConfig& config() const noexcept { return config_; }
    const RlsState& state() const noexcept { return state_; }
    void reset() override;

private:
    void update(double error) override;
    RlsConfig config_;
    RlsState state_;
};

/// Builds a filter for the given algorithm; step carries the step size for
/// LMS/NLMS and the forgetting factor for RLS.
std::unique_ptr<AdaptiveFilter> make_filter(Algorithm algorithm, std::size_t order,
                                            double step);

struct BlockResult {
    Signal output;  // y(n) trace
    Signal error;   // e(n) trace, the denoised estimate
    std::vector<std::vector<double>> weight_snapshots;
};

/// Folds process_sample over the block. Snapshot indices (ascending) record
/// the weight vector right after that sample's update.
BlockResult process_block(AdaptiveFilter& filter, const Signal& desired,
                          const Signal& reference,
                          std::span<const std::size_t> snapshot_at = {});

/// Eq.-(5)-style LMS step bound 1/lambda_max: estimates the order x order
/// autocorrelation matrix of the reference (biased sample autocorrelation,
/// Toeplitz) and takes the top eigenvalue by power iteration to 1e-8
/// relative tolerance. Throws undefined_bound_error on a zero reference.
double lms_step_bound(const Signal& reference, std::size_t order);

} // namespace anc
