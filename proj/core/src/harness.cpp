#include "anc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "anc/rng.hpp"
#include "anc/wav.hpp"

namespace anc {

Signal SourceSpec::load() const {
    if (!wav_path.empty()) {
        return wav_read(wav_path);
    }
    return synth_speech(synth_duration_s, synth_rate, synth_seed);
}

double RunConfig::effective_input_snr_db() const noexcept {
    if (std::isnan(input_snr_db)) {
        return NoiseSpec::default_corruption_snr_db(noise.kind);
    }
    return input_snr_db;
}

void RunConfig::validate() const {
    switch (algorithm) {
    case Algorithm::lms: LmsConfig{order, step_size}.validate(); break;
    case Algorithm::nlms: NlmsConfig{order, step_size}.validate(); break;
    case Algorithm::rls: RlsConfig{order, step_size}.validate(); break;
    }
    channel.validate();
    if (!(noise.level > 0.0) || !std::isfinite(noise.level)) {
        throw config_error("noise level must be positive and finite");
    }
    const double snr = effective_input_snr_db();
    if (!std::isfinite(snr) && !(std::isinf(snr) && snr > 0)) {
        throw config_error("input SNR must be finite or +inf");
    }
}

RunOutput run_anc(const RunConfig& config) {
    return run_anc(config.source.load(), config);
}

RunOutput run_anc(const Signal& clean, const RunConfig& config) {
    config.validate();
    const double target_snr = config.effective_input_snr_db();

    Signal reference;
    Signal primary = clean;
    if (std::isinf(target_snr)) {
        // no-noise sentinel: the noise path is off entirely
        reference.sample_rate = clean.sample_rate;
        reference.samples.assign(clean.size(), 0.0);
    } else {
        // primary hears the noise scaled to the target SNR and shaped by the
        // channel; the reference hears the raw stream
        reference = gen_noise(config.noise, clean.size(), clean.sample_rate);
        const MixResult mixed = mix_at_snr(clean, reference, target_snr);
        const Signal shaped = apply_channel(mixed.scaled_noise, config.channel);
        for (std::size_t i = 0; i < primary.size(); ++i) {
            primary.samples[i] += shaped.samples[i];
        }
    }

    RunOutput out;
    out.report.algorithm = config.algorithm;
    out.report.noise_kind = config.noise.kind;
    out.report.order = config.order;
    out.report.step_size = config.step_size;
    out.report.seed = config.noise.seed;
    out.report.input_snr_db = target_snr;
    out.denoised.sample_rate = clean.sample_rate;

    auto filter = make_filter(config.algorithm, config.order, config.step_size);
    try {
        BlockResult block = process_block(*filter, primary, reference);
        if (!clean.empty()) {
            out.report.snr_db = snr_db(clean, block.error);
            out.report.correlation = correlation(clean, block.error);
            out.report.mse = mse(clean, block.error);
        }
        out.denoised = std::move(block.error);
    } catch (const filter_fault& fault) {
        out.report.diverged_at = fault.sample_index();
    }
    return out;
}

void SweepGrid::validate() const {
    if (orders.empty() || step_sizes.empty() || algorithms.empty() ||
        noise_kinds.empty() || repetitions == 0) {
        throw config_error("sweep grid: every axis must be non-empty");
    }
    channel.validate();
    for (std::size_t order : orders) {
        if (order == 0) {
            throw config_error("sweep grid: order must be at least 1");
        }
    }
    for (double mu : step_sizes) {
        for (Algorithm algorithm : algorithms) {
            if (algorithm == Algorithm::rls) {
                continue; // rls rides at rls_forgetting
            }
            const double step = mu;
            if (algorithm == Algorithm::lms) {
                LmsConfig{1, step}.validate();
            } else {
                NlmsConfig{1, step}.validate();
            }
        }
    }
    RlsConfig{1, rls_forgetting}.validate();
}

std::uint64_t cell_seed(std::uint64_t master_seed, NoiseKind kind, std::size_t repetition) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a over the coordinates
    auto eat = [&h](const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    };
    const std::string_view name = to_string(kind);
    eat(name.data(), name.size());
    const std::uint64_t rep64 = repetition;
    eat(&rep64, sizeof(rep64));
    return master_seed ^ mix64(h);
}

namespace {

struct CellCoords {
    NoiseKind kind;
    std::size_t order;
    double step;
    Algorithm algorithm;
    std::size_t rep;
};

CellCoords coords_at(const SweepGrid& g, std::size_t index) {
    const std::size_t n_rep = g.repetitions;
    const std::size_t n_alg = g.algorithms.size();
    const std::size_t n_step = g.step_sizes.size();
    const std::size_t n_ord = g.orders.size();
    CellCoords c;
    c.rep = index % n_rep;
    index /= n_rep;
    c.algorithm = g.algorithms[index % n_alg];
    index /= n_alg;
    c.step = g.step_sizes[index % n_step];
    index /= n_step;
    c.order = g.orders[index % n_ord];
    index /= n_ord;
    c.kind = g.noise_kinds[index];
    return c;
}

AncReport run_grid_cell(const SweepGrid& grid, const Signal& fixture, std::size_t index) {
    const CellCoords c = coords_at(grid, index);
    RunConfig config;
    config.algorithm = c.algorithm;
    config.order = c.order;
    config.step_size = c.algorithm == Algorithm::rls ? grid.rls_forgetting : c.step;
    config.noise.kind = c.kind;
    config.noise.level = grid.noise_level.value_or(NoiseSpec::default_level(c.kind));
    config.noise.seed = cell_seed(grid.master_seed, c.kind, c.rep);
    config.channel = grid.channel;
    config.input_snr_db = grid.input_snr_db
                              ? *grid.input_snr_db
                              : NoiseSpec::default_corruption_snr_db(c.kind);
    return run_anc(fixture, config).report;
}

} // namespace

SweepTable run_sweep(const SweepGrid& grid, const Signal& fixture) {
    grid.validate();
    if (fixture.empty()) {
        throw config_error("run_sweep: empty fixture");
    }
    const std::size_t n_runs = grid.cells_per_repetition() * grid.repetitions;

    SweepTable table;
    table.grid = grid;
    table.runs.resize(n_runs);

    unsigned n_threads = grid.max_threads ? grid.max_threads : std::thread::hardware_concurrency();
    n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(n_runs));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure = nullptr;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_runs) {
                return;
            }
            try {
                table.runs[i] = run_grid_cell(grid, fixture, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return table;
}

namespace {

std::size_t axis_index(const char* what, auto const& axis, auto value) {
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (axis[i] == value) {
            return i;
        }
    }
    throw config_error(std::string("sweep table: ") + what + " not on the grid");
}

} // namespace

double SweepTable::mean_metric(const char* which, Algorithm algorithm, NoiseKind kind,
                               std::size_t order, double step_size) const {
    const std::size_t ik = axis_index("noise kind", grid.noise_kinds, kind);
    const std::size_t io = axis_index("order", grid.orders, order);
    const std::size_t is = axis_index("step size", grid.step_sizes, step_size);
    const std::size_t ia = axis_index("algorithm", grid.algorithms, algorithm);
    const std::size_t base =
        (((ik * grid.orders.size() + io) * grid.step_sizes.size() + is) * grid.algorithms.size() +
         ia) *
        grid.repetitions;

    double acc = 0.0;
    for (std::size_t r = 0; r < grid.repetitions; ++r) {
        const AncReport& run = runs.at(base + r);
        double v;
        if (std::string_view(which) == "snr") {
            // a diverged filter denoises nothing
            v = run.diverged() ? -std::numeric_limits<double>::infinity() : run.snr_db;
        } else if (std::string_view(which) == "correlation") {
            v = run.correlation;
        } else {
            v = run.mse;
        }
        acc += v;
    }
    return acc / static_cast<double>(grid.repetitions);
}

double SweepTable::mean_snr(Algorithm algorithm, NoiseKind kind, std::size_t order,
                            double step_size) const {
    return mean_metric("snr", algorithm, kind, order, step_size);
}

TableFormat table_format_from_string(std::string_view name) {
    if (name == "text") return TableFormat::text;
    if (name == "csv") return TableFormat::csv;
    throw config_error("unknown table format '" + std::string(name) +
                       "' (expected text or csv)");
}

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

void pad_to(std::string& line, std::size_t column) {
    if (line.size() < column) {
        line.append(column - line.size(), ' ');
    }
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string emit_text(const SweepTable& table) {
    const SweepGrid& g = table.grid;
    constexpr std::size_t kStepCol = 0;
    constexpr std::size_t kMetricCol = 12;
    constexpr std::size_t kValueCol0 = 26;
    constexpr std::size_t kValueWidth = 12;

    std::string out;
    bool first_block = true;
    for (std::size_t order : g.orders) {
        if (!first_block) {
            out += '\n';
        }
        first_block = false;
        out += "FILTER LENGTH N = " + std::to_string(order) + '\n';

        std::string head1 = "PARAMETERS";
        std::string head2;
        pad_to(head2, kStepCol);
        head2 += "STEP SIZE";
        pad_to(head2, kMetricCol);
        head2 += "METRIC";
        std::size_t col = kValueCol0;
        for (NoiseKind kind : g.noise_kinds) {
            pad_to(head1, col);
            head1 += upper(to_string(kind)) + " NOISE";
            for (Algorithm algorithm : g.algorithms) {
                pad_to(head2, col);
                head2 += upper(to_string(algorithm));
                col += kValueWidth;
            }
        }
        out += head1 + '\n' + head2 + '\n';

        for (double step : g.step_sizes) {
            const char* metric_names[3] = {"SNR", "Correlation", "MSE"};
            const char* metric_keys[3] = {"snr", "correlation", "mse"};
            for (int m = 0; m < 3; ++m) {
                std::string line;
                if (m == 0) {
                    char step_buf[32];
                    std::snprintf(step_buf, sizeof(step_buf), "%.2f", step);
                    line += step_buf;
                }
                pad_to(line, kMetricCol);
                line += metric_names[m];
                col = kValueCol0;
                for (NoiseKind kind : g.noise_kinds) {
                    for (Algorithm algorithm : g.algorithms) {
                        pad_to(line, col);
                        line += fixed4(table.mean_metric(metric_keys[m], algorithm, kind,
                                                         order, step));
                        col += kValueWidth;
                    }
                }
                out += line + '\n';
            }
        }
    }
    if (first_block) {
        out += "FILTER LENGTH (empty grid)\n";
    }
    return out;
}

constexpr std::string_view kCsvHeader =
    "algorithm,noise_kind,order,step_size,seed,snr_db,correlation,mse,diverged_at";

std::string emit_csv(const SweepTable& table) {
    std::string out{kCsvHeader};
    out += '\n';
    for (const AncReport& run : table.runs) {
        out += to_string(run.algorithm);
        out += ',';
        out += to_string(run.noise_kind);
        out += ',';
        out += std::to_string(run.order);
        out += ',';
        out += format_double(run.step_size);
        out += ',';
        out += std::to_string(run.seed);
        out += ',';
        out += format_double(run.snr_db);
        out += ',';
        out += format_double(run.correlation);
        out += ',';
        out += format_double(run.mse);
        out += ',';
        if (run.diverged()) {
            out += std::to_string(*run.diverged_at);
        }
        out += '\n';
    }
    return out;
}

} // namespace

std::string emit_table(const SweepTable& table, TableFormat format) {
    return format == TableFormat::text ? emit_text(table) : emit_csv(table);
}

std::vector<AncReport> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw config_error("csv: missing or unexpected header");
    }
    std::vector<AncReport> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != 9) {
            throw config_error("csv: wrong field count on line '" + line + "'");
        }
        auto to_double = [](const std::string& s) {
            double v = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc{}) {
                throw config_error("csv: bad number '" + s + "'");
            }
            return v;
        };
        AncReport r;
        r.algorithm = algorithm_from_string(fields[0]);
        r.noise_kind = noise_kind_from_string(fields[1]);
        r.order = static_cast<std::size_t>(std::stoull(fields[2]));
        r.step_size = to_double(fields[3]);
        r.seed = std::stoull(fields[4]);
        r.snr_db = to_double(fields[5]);
        r.correlation = to_double(fields[6]);
        r.mse = to_double(fields[7]);
        if (!fields[8].empty()) {
            r.diverged_at = static_cast<std::size_t>(std::stoull(fields[8]));
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace anc
