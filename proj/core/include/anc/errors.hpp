#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anc {

/// Invalid configuration or violated precondition (bad lengths, ranges,
/// conflicting options).
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// lms_step_bound on a reference that carries no energy.
class undefined_bound_error : public config_error {
public:
    using config_error::config_error;
};

/// A metric that is mathematically undefined for the given inputs, e.g.
/// Pearson correlation of a zero-variance signal. Reported, never silently
/// zeroed.
class degenerate_metric_error : public config_error {
public:
    using config_error::config_error;
};

/// Runtime fault raised mid-stream by a filter. Carries the 0-based index
/// of the sample being processed when the fault was detected.
class filter_fault : public std::runtime_error {
public:
    filter_fault(const std::string& what, std::size_t sample_index)
        : std::runtime_error(what + " (sample " + std::to_string(sample_index) + ")"),
          index_(sample_index) {}

    std::size_t sample_index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A weight became non-finite. Raised instead of letting NaNs corrupt
/// downstream metrics.
class divergence_fault : public filter_fault {
public:
    using filter_fault::filter_fault;
};

/// The RLS inverse-correlation recursion produced a non-finite value or a
/// nonpositive gain denominator. Resetting the state recovers.
class numerical_breakdown : public filter_fault {
public:
    using filter_fault::filter_fault;
};

/// Malformed or unsupported WAV data; the message names the offending chunk.
class wav_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace anc
