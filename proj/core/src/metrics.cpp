#include "anc/metrics.hpp"

#include <cmath>

namespace anc {

namespace {

void check_pair(const Signal& clean, const Signal& estimate, std::size_t min_len,
                const char* who) {
    if (clean.size() != estimate.size()) {
        throw config_error(std::string(who) + ": signal lengths differ");
    }
    if (clean.size() < min_len) {
        throw config_error(std::string(who) + ": signals too short");
    }
}

} // namespace

double mse(const Signal& clean, const Signal& estimate) {
    check_pair(clean, estimate, 1, "mse");
    double acc = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const double d = clean.samples[i] - estimate.samples[i];
        acc += d * d;
    }
    return acc / static_cast<double>(clean.size());
}

double snr_db(const Signal& clean, const Signal& estimate) {
    check_pair(clean, estimate, 1, "snr_db");
    double signal_energy = 0.0;
    double residual_energy = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const double d = clean.samples[i] - estimate.samples[i];
        signal_energy += clean.samples[i] * clean.samples[i];
        residual_energy += d * d;
    }
    if (signal_energy <= 0.0) {
        throw config_error("snr_db: clean signal has zero power");
    }
    if (residual_energy == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(signal_energy / residual_energy);
}

double correlation(const Signal& clean, const Signal& estimate) {
    check_pair(clean, estimate, 2, "correlation");
    const auto len = static_cast<double>(clean.size());
    double mean_c = 0.0;
    double mean_e = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        mean_c += clean.samples[i];
        mean_e += estimate.samples[i];
    }
    mean_c /= len;
    mean_e /= len;
    double var_c = 0.0;
    double var_e = 0.0;
    double cov = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const double dc = clean.samples[i] - mean_c;
        const double de = estimate.samples[i] - mean_e;
        var_c += dc * dc;
        var_e += de * de;
        cov += dc * de;
    }
    if (var_c <= 0.0 || var_e <= 0.0) {
        throw degenerate_metric_error("correlation: zero-variance input");
    }
    return cov / std::sqrt(var_c * var_e);
}

} // namespace anc
