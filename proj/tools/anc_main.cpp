// anc: denoise / sweep / synth front end over the ANC benchmark library.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 file I/O or WAV
// parse error, 4 filter divergence.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anc/harness.hpp"
#include "anc/wav.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDivergence = 4;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        std::string item = csv.substr(start, comma - start);
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

anc::ChannelSpec channel_from_name(const std::string& name) {
    if (name == "identity") {
        return anc::ChannelSpec::identity();
    }
    if (name == "lowpass3") {
        return anc::ChannelSpec::lowpass3();
    }
    if (name == "standard") {
        return anc::ChannelSpec::standard_path();
    }
    throw anc::config_error("unknown channel preset '" + name +
                            "' (expected identity, lowpass3 or standard)");
}

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) {
        return {};
    }
    return s.substr(from, s.find_last_not_of(" \t\r") - from + 1);
}

/// key = value lines, '#' comments. Keys match the subcommand's flag names.
/// Values apply only where the user gave no flag; unknown keys are errors.
void apply_config_file(
    const CLI::App* sub, const std::string& path,
    const std::map<std::string, std::function<void(const std::string&)>>& setters) {
    std::ifstream in(path);
    if (!in) {
        throw anc::config_error("cannot read config file '" + path + "'");
    }
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw anc::config_error("config file '" + path + "': expected key = value, got '" +
                                    stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const auto setter = setters.find(key);
        if (setter == setters.end()) {
            throw anc::config_error("config file '" + path + "': unknown key '" + key + "'");
        }
        if (sub->count("--" + key) > 0) {
            continue; // flags override the file
        }
        try {
            setter->second(value);
        } catch (const anc::config_error&) {
            throw;
        } catch (const std::exception&) {
            throw anc::config_error("config file '" + path + "': bad value for '" + key +
                                    "': '" + value + "'");
        }
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw anc::wav_error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw anc::wav_error("write failed for '" + path + "'");
    }
}

std::string report_csv(const anc::AncReport& report) {
    anc::SweepTable one;
    one.runs = {report};
    return emit_table(one, anc::TableFormat::csv);
}

struct DenoiseArgs {
    std::string input_wav;
    std::uint64_t synth_seed = 42;
    bool synth_set = false;
    std::string algorithm = "rls";
    std::size_t order = 15;
    double mu = 0.999;
    std::string noise = "white";
    double input_snr_db = std::numeric_limits<double>::quiet_NaN();
    bool snr_set = false;
    double noise_level = 0.0;
    bool level_set = false;
    std::uint64_t seed = 0;
    std::string channel = "identity";
    std::string out_wav;
    std::string report_path;
    std::string config_path;
};

int cmd_denoise(DenoiseArgs& args, const CLI::App* sub) {
    if (!args.config_path.empty()) {
        apply_config_file(
            sub, args.config_path,
            {{"input", [&](const std::string& v) { args.input_wav = v; }},
             {"synth",
              [&](const std::string& v) {
                  args.synth_seed = std::stoull(v);
                  args.synth_set = true;
              }},
             {"algorithm", [&](const std::string& v) { args.algorithm = v; }},
             {"order", [&](const std::string& v) { args.order = std::stoull(v); }},
             {"mu", [&](const std::string& v) { args.mu = std::stod(v); }},
             {"noise", [&](const std::string& v) { args.noise = v; }},
             {"input-snr-db",
              [&](const std::string& v) {
                  args.input_snr_db = std::stod(v);
                  args.snr_set = true;
              }},
             {"noise-level",
              [&](const std::string& v) {
                  args.noise_level = std::stod(v);
                  args.level_set = true;
              }},
             {"seed", [&](const std::string& v) { args.seed = std::stoull(v); }},
             {"channel", [&](const std::string& v) { args.channel = v; }},
             {"out", [&](const std::string& v) { args.out_wav = v; }},
             {"report", [&](const std::string& v) { args.report_path = v; }}});
    }
    if (!args.input_wav.empty() && args.synth_set) {
        std::cerr << "anc denoise: give either an input WAV or --synth, not both "
                     "(got input '"
                  << args.input_wav << "' and --synth " << args.synth_seed << ")\n";
        return kExitUsage;
    }
    if (args.input_wav.empty() && !args.synth_set) {
        std::cerr << "anc denoise: no input source; pass an input WAV or --synth <seed>\n";
        return kExitUsage;
    }

    anc::RunConfig config;
    config.algorithm = anc::algorithm_from_string(args.algorithm);
    config.order = args.order;
    config.step_size = args.mu;
    config.noise.kind = anc::noise_kind_from_string(args.noise);
    config.noise.level =
        args.level_set ? args.noise_level : anc::NoiseSpec::default_level(config.noise.kind);
    config.noise.seed = args.seed;
    config.channel = channel_from_name(args.channel);
    if (args.snr_set) {
        config.input_snr_db = args.input_snr_db;
    }
    if (!args.input_wav.empty()) {
        config.source.wav_path = args.input_wav;
    } else {
        config.source = anc::SourceSpec::standard_fixture();
        config.source.synth_seed = args.synth_seed;
    }
    config.validate();

    const anc::RunOutput out = anc::run_anc(config);
    if (out.report.diverged()) {
        std::cerr << "anc denoise: filter diverged at sample " << *out.report.diverged_at
                  << "; lower --mu (LMS is stable below 1/lambda_max of the reference)\n";
        return kExitDivergence;
    }
    if (!args.out_wav.empty()) {
        anc::wav_write(args.out_wav, out.denoised);
    }
    if (!args.report_path.empty()) {
        write_text_file(args.report_path, report_csv(out.report));
    }
    std::cout << "algorithm=" << anc::to_string(out.report.algorithm)
              << " noise=" << anc::to_string(out.report.noise_kind)
              << " noise_level=" << config.noise.level << " order=" << out.report.order
              << " step=" << out.report.step_size << " seed=" << out.report.seed
              << " input_snr_db=" << out.report.input_snr_db << " channel=" << args.channel
              << '\n'
              << "snr_db=" << out.report.snr_db << " correlation=" << out.report.correlation
              << " mse=" << out.report.mse << '\n';
    return 0;
}

struct SweepArgs {
    std::string fixture_wav;
    std::uint64_t fixture_seed = 42;
    std::string orders = "5,10,15";
    std::string step_sizes = "0.05,0.10,0.15";
    std::string algorithms = "nlms,lms,rls";
    std::string noise_kinds = "white,random";
    std::size_t reps = 5;
    std::uint64_t master_seed = 0;
    double rls_forgetting = 0.999;
    std::string channel = "standard";
    double input_snr_db = 0.0;
    bool snr_set = false;
    double noise_level = 0.0;
    bool level_set = false;
    unsigned threads = 0;
    std::string format = "csv";
    std::string out_path;
    std::string grid_path;
};

int cmd_sweep(SweepArgs& args, const CLI::App* sub) {
    if (!args.grid_path.empty()) {
        apply_config_file(
            sub, args.grid_path,
            {{"fixture", [&](const std::string& v) { args.fixture_wav = v; }},
             {"fixture-seed",
              [&](const std::string& v) { args.fixture_seed = std::stoull(v); }},
             {"orders", [&](const std::string& v) { args.orders = v; }},
             {"step-sizes", [&](const std::string& v) { args.step_sizes = v; }},
             {"algorithms", [&](const std::string& v) { args.algorithms = v; }},
             {"noise-kinds", [&](const std::string& v) { args.noise_kinds = v; }},
             {"reps", [&](const std::string& v) { args.reps = std::stoull(v); }},
             {"seed", [&](const std::string& v) { args.master_seed = std::stoull(v); }},
             {"rls-forgetting",
              [&](const std::string& v) { args.rls_forgetting = std::stod(v); }},
             {"channel", [&](const std::string& v) { args.channel = v; }},
             {"input-snr-db",
              [&](const std::string& v) {
                  args.input_snr_db = std::stod(v);
                  args.snr_set = true;
              }},
             {"noise-level",
              [&](const std::string& v) {
                  args.noise_level = std::stod(v);
                  args.level_set = true;
              }},
             {"threads",
              [&](const std::string& v) {
                  args.threads = static_cast<unsigned>(std::stoul(v));
              }},
             {"format", [&](const std::string& v) { args.format = v; }},
             {"out", [&](const std::string& v) { args.out_path = v; }}});
    }
    anc::SweepGrid grid;
    grid.orders.clear();
    for (const auto& item : split_list(args.orders)) {
        grid.orders.push_back(std::stoull(item));
    }
    grid.step_sizes.clear();
    for (const auto& item : split_list(args.step_sizes)) {
        grid.step_sizes.push_back(std::stod(item));
    }
    grid.algorithms.clear();
    for (const auto& item : split_list(args.algorithms)) {
        grid.algorithms.push_back(anc::algorithm_from_string(item));
    }
    grid.noise_kinds.clear();
    for (const auto& item : split_list(args.noise_kinds)) {
        grid.noise_kinds.push_back(anc::noise_kind_from_string(item));
    }
    grid.repetitions = args.reps;
    grid.master_seed = args.master_seed;
    grid.rls_forgetting = args.rls_forgetting;
    grid.channel = channel_from_name(args.channel);
    if (args.snr_set) {
        grid.input_snr_db = args.input_snr_db;
    }
    if (args.level_set) {
        grid.noise_level = args.noise_level;
    }
    grid.max_threads = args.threads;
    grid.validate();

    anc::SourceSpec source = anc::SourceSpec::standard_fixture();
    if (!args.fixture_wav.empty()) {
        source.wav_path = args.fixture_wav;
    } else {
        source.synth_seed = args.fixture_seed;
    }

    const anc::SweepTable table = anc::run_sweep(grid, source.load());
    const std::string rendered =
        anc::emit_table(table, anc::table_format_from_string(args.format));
    if (args.out_path.empty()) {
        std::cout << rendered;
    } else {
        write_text_file(args.out_path, rendered);
    }
    return 0; // diverged cells are data, not failures
}

struct SynthArgs {
    double duration = 2.0;
    std::uint32_t rate = 8000;
    std::uint64_t seed = 42;
    std::string out_path;
};

int cmd_synth(const SynthArgs& args) {
    anc::wav_write(args.out_path, anc::synth_speech(args.duration, args.rate, args.seed));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive noise cancellation benchmark (LMS, NLMS, RLS)"};
    app.require_subcommand(1);

    DenoiseArgs d;
    CLI::App* denoise =
        app.add_subcommand("denoise", "corrupt a speech signal with seeded noise and "
                                      "denoise it through the two-input ANC loop");
    denoise->add_option("input", d.input_wav, "input WAV with the clean speech");
    denoise
        ->add_option("--synth", d.synth_seed,
                     "synthesize the clean fixture with this seed (2 s at 8 kHz)")
        ->each([&d](const std::string&) { d.synth_set = true; });
    denoise->add_option("--algorithm", d.algorithm, "lms, nlms or rls")
        ->check(CLI::IsMember({"lms", "nlms", "rls"}));
    denoise->add_option("--order", d.order, "filter length N (taps), at least 1")
        ->check(CLI::PositiveNumber);
    denoise->add_option("--mu", d.mu,
                        "step size: LMS any positive value, stable at or below the "
                        "reference step bound 1/lambda_max; NLMS in (0, 2); for RLS this "
                        "slot carries the forgetting factor in (0, 1]");
    denoise->add_option("--noise", d.noise, "noise kind: white (Gaussian) or random (uniform)")
        ->check(CLI::IsMember({"white", "random"}));
    denoise
        ->add_option("--input-snr-db", d.input_snr_db,
                     "corruption SNR of the primary input in dB; inf disables the noise "
                     "path (default: +5 white, -2 random)")
        ->each([&d](const std::string&) { d.snr_set = true; });
    denoise
        ->add_option("--noise-level", d.noise_level,
                     "raw generation level (sigma for white, amplitude for random; "
                     "default 0.4 / 0.75)")
        ->each([&d](const std::string&) { d.level_set = true; });
    denoise->add_option("--seed", d.seed, "noise stream seed")->envname("ANC_SEED");
    denoise
        ->add_option("--channel", d.channel,
                     "noise path preset: identity, lowpass3 or standard")
        ->check(CLI::IsMember({"identity", "lowpass3", "standard"}));
    denoise->add_option("--out", d.out_wav, "write the denoised signal to this WAV");
    denoise->add_option("--report", d.report_path, "write a one-row CSV report here");
    denoise->add_option("--config", d.config_path,
                        "key = value file whose keys match these flags; flags override "
                        "the file");

    SweepArgs s;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "run the benchmark grid (orders x step sizes x algorithms x noise kinds) "
                 "and tabulate SNR / correlation / MSE");
    sweep->add_option("--fixture", s.fixture_wav, "clean fixture WAV (default: synthetic)");
    sweep->add_option("--fixture-seed", s.fixture_seed,
                      "seed of the synthetic fixture (2 s at 8 kHz)");
    sweep->add_option("--orders", s.orders, "comma-separated filter lengths");
    sweep->add_option("--step-sizes", s.step_sizes,
                      "comma-separated LMS/NLMS step sizes (RLS runs at --rls-forgetting)");
    sweep->add_option("--algorithms", s.algorithms, "comma-separated subset of nlms,lms,rls");
    sweep->add_option("--noise-kinds", s.noise_kinds, "comma-separated subset of white,random");
    sweep->add_option("--reps", s.reps, "repetitions with distinct seeds per cell")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--seed", s.master_seed, "master seed; cell seeds derive from it")
        ->envname("ANC_SEED");
    sweep->add_option("--rls-forgetting", s.rls_forgetting,
                      "RLS forgetting factor in (0, 1]");
    sweep
        ->add_option("--channel", s.channel,
                     "noise path preset: identity, lowpass3 or standard")
        ->check(CLI::IsMember({"identity", "lowpass3", "standard"}));
    sweep
        ->add_option("--input-snr-db", s.input_snr_db,
                     "corruption SNR for every cell (default: per-kind, +5 white / -2 random)")
        ->each([&s](const std::string&) { s.snr_set = true; });
    sweep
        ->add_option("--noise-level", s.noise_level,
                     "raw generation level for every cell (default: per-kind, 0.4 / 0.75)")
        ->each([&s](const std::string&) { s.level_set = true; });
    sweep->add_option("--threads", s.threads, "worker threads (0 = hardware)");
    sweep->add_option("--format", s.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    sweep->add_option("--out", s.out_path, "write the table here instead of stdout");
    sweep->add_option("--grid", s.grid_path, "grid file in key = value format, keys "
                                             "matching these flags; flags override the file");

    SynthArgs y;
    CLI::App* synth =
        app.add_subcommand("synth", "write the deterministic speech-like fixture as a WAV");
    synth->add_option("--duration", y.duration, "seconds, positive");
    synth->add_option("--rate", y.rate, "sample rate in Hz")->check(CLI::PositiveNumber);
    synth->add_option("--seed", y.seed, "fixture seed")->envname("ANC_SEED");
    synth->add_option("--out", y.out_path, "output WAV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (denoise->parsed()) {
            return cmd_denoise(d, denoise);
        }
        if (sweep->parsed()) {
            return cmd_sweep(s, sweep);
        }
        if (synth->parsed()) {
            return cmd_synth(y);
        }
    } catch (const anc::divergence_fault& e) {
        std::cerr << "anc: filter diverged: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const anc::wav_error& e) {
        std::cerr << "anc: " << e.what() << '\n';
        return kExitIo;
    } catch (const anc::config_error& e) {
        std::cerr << "anc: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "anc: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
