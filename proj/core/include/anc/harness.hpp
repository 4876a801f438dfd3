#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anc/filters.hpp"
#include "anc/metrics.hpp"
#include "anc/signal.hpp"

namespace anc {

/// Where the clean fixture comes from: a WAV file, or the synthesizer.
struct SourceSpec {
    std::string wav_path; // empty -> synthesize
    double synth_duration_s = 2.0;
    std::uint32_t synth_rate = 8000;
    std::uint64_t synth_seed = 42;

    /// The benchmark fixture: synth seed 42, 8 kHz, 2 s.
    static SourceSpec standard_fixture() { return SourceSpec{}; }

    Signal load() const;
};

/// One end-to-end denoising run. The pipeline: clean fixture -> seeded noise
/// stream -> the primary input gets the noise scaled to input_snr_db and
/// passed through the channel, the reference input gets the raw stream ->
/// adaptive filter -> the error signal is the denoised estimate -> metrics
/// against the clean fixture.
struct RunConfig {
    Algorithm algorithm = Algorithm::rls;
    std::size_t order = 15;
    double step_size = 0.05; // mu; forgetting factor for rls
    NoiseSpec noise = NoiseSpec::defaults_for(NoiseKind::white_gaussian);
    ChannelSpec channel = ChannelSpec::identity();
    /// Corruption SNR of the primary input; +infinity disables the noise
    /// path entirely (zero reference). NaN selects the noise kind's default.
    double input_snr_db = std::numeric_limits<double>::quiet_NaN();
    SourceSpec source = SourceSpec::standard_fixture();

    double effective_input_snr_db() const noexcept;
    void validate() const;
};

struct RunOutput {
    AncReport report;
    Signal denoised;
};

/// Loads the source and runs the ANC loop. A filter fault is not an error
/// here: the report comes back flagged with the fault index instead.
RunOutput run_anc(const RunConfig& config);

/// Same, with the clean fixture already in hand.
RunOutput run_anc(const Signal& clean, const RunConfig& config);

/// The benchmark grid. step_sizes applies to LMS and NLMS; RLS cells run at
/// rls_forgetting in every step-size row. Noise levels and corruption SNRs
/// are the per-kind defaults unless overridden.
struct SweepGrid {
    std::vector<std::size_t> orders{5, 10, 15};
    std::vector<double> step_sizes{0.05, 0.10, 0.15};
    std::vector<Algorithm> algorithms{Algorithm::nlms, Algorithm::lms, Algorithm::rls};
    std::vector<NoiseKind> noise_kinds{NoiseKind::white_gaussian, NoiseKind::uniform_random};
    std::size_t repetitions = 5;
    std::uint64_t master_seed = 0;
    double rls_forgetting = 0.999;
    ChannelSpec channel = ChannelSpec::standard_path();
    std::optional<double> input_snr_db;  // per-kind default when unset
    std::optional<double> noise_level;   // per-kind default when unset
    unsigned max_threads = 0; // 0 = hardware concurrency

    std::size_t cells_per_repetition() const noexcept {
        return orders.size() * step_sizes.size() * algorithms.size() * noise_kinds.size();
    }
    void validate() const;
};

/// Noise seed of a sweep cell. Derived from the semantic coordinates (noise
/// kind and repetition index) hashed into the master seed, so adding grid
/// axes or values never reshuffles existing cells, and the algorithm / order
/// / step-size columns of one repetition share a noise realization (paired
/// comparisons).
std::uint64_t cell_seed(std::uint64_t master_seed, NoiseKind kind, std::size_t repetition);

struct SweepTable {
    SweepGrid grid;
    std::vector<AncReport> runs; // fixed order: kind, order, step, algorithm, rep

    /// Mean output SNR over repetitions; a diverged repetition counts as
    /// -infinity (a diverged filter denoises nothing).
    double mean_snr(Algorithm algorithm, NoiseKind kind, std::size_t order,
                    double step_size) const;
    double mean_metric(const char* which, Algorithm algorithm, NoiseKind kind,
                       std::size_t order, double step_size) const;
};

/// Runs every grid cell against the fixture. Cells are independent and run on
/// a small thread pool; results are ordered by cell index, so the table is a
/// pure function of (grid, fixture). Faults are recorded in-cell; the sweep
/// always completes.
SweepTable run_sweep(const SweepGrid& grid, const Signal& fixture);

enum class TableFormat { text, csv };

TableFormat table_format_from_string(std::string_view name);

/// Renders the sweep. Text: per-order blocks, step-size rows with SNR /
/// correlation / MSE sub-rows, NLMS | LMS | RLS columns split by noise kind,
/// 4 decimal places, repetition means. CSV: one row per run,
/// round-trip-exact numbers, columns algorithm, noise_kind, order, step_size,
/// seed, snr_db, correlation, mse, diverged_at.
std::string emit_table(const SweepTable& table, TableFormat format);

/// Reads back emit_table's CSV (round-trip checks, downstream tooling).
std::vector<AncReport> parse_csv(const std::string& text);

} // namespace anc
