#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "anc/filters.hpp"
#include "anc/signal.hpp"

namespace anc {

/// (1/L) * sum (clean_i - estimate_i)^2.
double mse(const Signal& clean, const Signal& estimate);

/// Output quality in dB against the clean signal:
/// 10 * log10(sum clean^2 / sum (clean - estimate)^2).
/// A zero residual returns +infinity.
double snr_db(const Signal& clean, const Signal& estimate);

/// Pearson correlation coefficient. Lengths must be >= 2 and both inputs
/// must have nonzero variance (degenerate_metric_error otherwise).
double correlation(const Signal& clean, const Signal& estimate);

/// One benchmark run: the three comparison metrics plus enough of the
/// configuration to re-run the exact cell. A diverged run carries the fault
/// index and NaN metrics.
struct AncReport {
    Algorithm algorithm = Algorithm::lms;
    NoiseKind noise_kind = NoiseKind::white_gaussian;
    std::size_t order = 0;
    double step_size = 0.0; // mu; forgetting factor for rls
    std::uint64_t seed = 0;
    double input_snr_db = 0.0;

    double snr_db = std::numeric_limits<double>::quiet_NaN();
    double correlation = std::numeric_limits<double>::quiet_NaN();
    double mse = std::numeric_limits<double>::quiet_NaN();
    std::optional<std::size_t> diverged_at;

    bool diverged() const noexcept { return diverged_at.has_value(); }
};

} // namespace anc
