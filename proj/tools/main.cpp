#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfvmd/bolt.hpp"
#include "mfvmd/csv.hpp"
#include "mfvmd/error.hpp"
#include "mfvmd/hilbert.hpp"
#include "mfvmd/morphology.hpp"
#include "mfvmd/svg_plot.hpp"
#include "mfvmd/synthesis.hpp"
#include "mfvmd/version.hpp"
#include "mfvmd/vmd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mfvmd;

namespace {

void write_text_atomic(const fs::path& path, const std::string& content) {
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("io", "cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw Error("io", "write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("io", "rename to '" + path.string() + "' failed: " + ec.message());
    }
}

// Flags shared by every subcommand that writes files.
struct OutputOpts {
    std::string out_dir = ".";
    bool out_dir_given = false;
    std::string base;  // output basename; defaults per subcommand

    fs::path dir() const {
        // Explicit --out-dir wins; otherwise the environment override.
        if (!out_dir_given) {
            if (const char* env = std::getenv("MFVMD_OUT_DIR"); env && *env) return env;
        }
        return out_dir;
    }
    fs::path file(const std::string& suffix) const { return dir() / (base + suffix); }
};

void add_output_opts(CLI::App* cmd, OutputOpts& out) {
    cmd->add_option("--out-dir", out.out_dir,
                    "Output directory (env MFVMD_OUT_DIR overrides the default)")
        ->each([&out](const std::string&) { out.out_dir_given = true; });
    cmd->add_option("-o,--output", out.base, "Basename for output files");
}

struct VmdOpts {
    VMDConfig cfg;
    std::string init = "uniform";
    std::optional<std::uint64_t> seed;

    VMDConfig resolved() const {
        VMDConfig c = cfg;
        if (init == "uniform")
            c.init = OmegaInit::kUniform;
        else if (init == "zero")
            c.init = OmegaInit::kZero;
        else if (init == "random")
            c.init = OmegaInit::kRandom;
        else
            throw Error("bad-config", "unknown init policy '" + init + "'");
        c.seed = seed;
        return c;
    }
};

void add_vmd_opts(CLI::App* cmd, VmdOpts& v, std::size_t default_modes) {
    v.cfg.mode_count = default_modes;
    cmd->add_option("--modes", v.cfg.mode_count, "Number of modes K")->capture_default_str();
    cmd->add_option("--alpha", v.cfg.alpha, "Bandwidth penalty")->capture_default_str();
    cmd->add_option("--tau", v.cfg.tau, "Dual-ascent step")->capture_default_str();
    cmd->add_option("--tol", v.cfg.tolerance, "Convergence tolerance")->capture_default_str();
    cmd->add_option("--max-iters", v.cfg.max_iterations, "Iteration cap")->capture_default_str();
    cmd->add_option("--init", v.init, "Center-frequency init: uniform|zero|random")
        ->capture_default_str();
    cmd->add_option("--seed", v.seed, "Seed for random init");
}

struct SeOpts {
    std::optional<std::size_t> width;
    bool auto_select = false;
    std::size_t min_width = 3;
    std::size_t max_width = 15;
    double threshold = 0.95;

    void apply(MfVmdConfig& cfg) const {
        if (width) cfg.se = StructuringElement::flat(*width);
        cfg.se_auto.min_width = min_width;
        cfg.se_auto.max_width = max_width;
        cfg.se_auto.threshold = threshold;
    }
};

void add_se_opts(CLI::App* cmd, SeOpts& se) {
    auto* w = cmd->add_option("--se-width", se.width, "Fixed flat structuring-element width");
    auto* a = cmd->add_flag("--se-auto", se.auto_select,
                            "Select the width by the correlation criterion (default)");
    cmd->add_option("--se-min", se.min_width, "Width scan lower bound")->capture_default_str();
    cmd->add_option("--se-max", se.max_width, "Width scan upper bound")->capture_default_str();
    cmd->add_option("--se-threshold", se.threshold, "Correlation threshold for the scan")
        ->capture_default_str();
    w->excludes(a);
}

json vmd_config_json(const VMDConfig& c) {
    json j{{"modes", c.mode_count},         {"alpha", c.alpha},
           {"tau", c.tau},                  {"tol", c.tolerance},
           {"max_iters", c.max_iterations}, {"init", nullptr},
           {"seed", nullptr}};
    switch (c.init) {
        case OmegaInit::kUniform: j["init"] = "uniform"; break;
        case OmegaInit::kZero: j["init"] = "zero"; break;
        case OmegaInit::kRandom: j["init"] = "random"; break;
    }
    if (c.seed) j["seed"] = *c.seed;
    return j;
}

json se_config_json(const SeOpts& se, const MfVmdConfig& cfg) {
    json j;
    if (cfg.se)
        j["se_width"] = cfg.se->width();
    else
        j["se_auto"] = {{"min", se.min_width}, {"max", se.max_width}, {"threshold", se.threshold}};
    return j;
}

void write_provenance(const OutputOpts& out, const std::string& subcommand, const json& config,
                      const std::vector<fs::path>& artifacts, const std::string& input = "") {
    json j{{"schema", 1},
           {"tool", "mfvmd"},
           {"version", kVersion},
           {"subcommand", subcommand},
           {"config", config},
           {"outputs", json::array()}};
    if (!input.empty()) j["input"] = input;
    for (const auto& p : artifacts) j["outputs"].push_back(p.filename().string());
    write_text_atomic(out.file(".provenance.json"), j.dump(2) + "\n");
}

json summary_json(const VMDResult& r) {
    json omegas = json::array();
    for (const auto& m : r.modes) omegas.push_back(m.omega_hz);
    const double rnorm = std::sqrt(r.residual.energy());
    const double snorm = std::sqrt(r.input.energy());
    return json{{"omegas_hz", omegas},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"residual_norm", rnorm},
                {"relative_residual_norm", snorm > 0.0 ? rnorm / snorm : 0.0}};
}

std::vector<fs::path> write_modes(const OutputOpts& out, const VMDResult& r) {
    std::vector<fs::path> files;
    for (std::size_t k = 0; k < r.modes.size(); ++k) {
        fs::path p = out.file(".mode" + std::to_string(k + 1) + ".csv");
        write_signal_csv(r.modes[k].u, p);
        files.push_back(std::move(p));
    }
    return files;
}

std::string default_base(const std::string& input_path) {
    return fs::path(input_path).stem().string();
}

// ---- subcommand runners ----

struct SimulateOpts {
    std::string preset;
    double fs = 0.0;  // 0 = preset default
    std::optional<double> snr_db;
    std::uint64_t seed = 1;
    bool plot = false;
    OutputOpts out;
    // bolt overrides
    BoltEchoSpec bolt;
};

int run_simulate(SimulateOpts& o) {
    Signal s = [&]() -> Signal {
        if (o.preset == "eq10") {
            return gen_piecewise(two_tone_switch_spec(o.fs > 0 ? o.fs : 1.0e6));
        }
        if (o.preset == "eq10-noisy") {
            const Signal clean = gen_piecewise(two_tone_switch_spec(o.fs > 0 ? o.fs : 1.0e6));
            return add_noise(clean, o.snr_db.value_or(5.0), o.seed);
        }
        if (o.preset == "bolt") {
            if (o.fs > 0) o.bolt.fs_hz = o.fs;
            Signal clean = gen_bolt_echo(o.bolt);
            if (o.snr_db) return add_noise(clean, *o.snr_db, o.seed);
            return clean;
        }
        throw Error("bad-config", "unknown preset '" + o.preset + "'");
    }();

    if (o.out.base.empty()) o.out.base = o.preset;
    std::vector<fs::path> artifacts;
    const fs::path csv = o.out.file(".csv");
    write_signal_csv(s, csv);
    artifacts.push_back(csv);
    if (o.plot) {
        const fs::path svg = o.out.file(".svg");
        write_text_atomic(svg, plot_signal(s, o.out.base));
        artifacts.push_back(svg);
    }

    json cfg{{"preset", o.preset}, {"fs_hz", s.sample_rate()}, {"samples", s.size()}};
    const bool noisy = o.preset == "eq10-noisy" || (o.preset == "bolt" && o.snr_db);
    if (noisy) {
        cfg["snr_db"] = o.snr_db.value_or(5.0);
        cfg["seed"] = o.seed;
    }
    if (o.preset == "bolt") {
        cfg["bolt"] = {{"length_m", o.bolt.bolt_length_m},
                       {"velocity_mps", o.bolt.wave_velocity_mps},
                       {"center_freq_hz", o.bolt.pulse_center_freq_hz},
                       {"pulse_width_s", o.bolt.pulse_width_s},
                       {"echo_amplitude", o.bolt.echo_amplitude},
                       {"record_length_s", o.bolt.record_length_s},
                       {"decay_time_s", o.bolt.decay_time_s}};
    }
    write_provenance(o.out, "simulate", cfg, artifacts);
    std::printf("wrote %s (%zu samples)\n", csv.string().c_str(), s.size());
    return 0;
}

struct DecomposeOpts {
    std::string input;
    VmdOpts vmd;
    SeOpts se;
    bool morphological = false;  // true for mf-decompose
    bool plot = false;
    OutputOpts out;
};

int run_decompose(DecomposeOpts& o) {
    const Signal s = read_signal_csv(o.input);
    if (o.out.base.empty()) o.out.base = default_base(o.input);

    json cfg{{"vmd", vmd_config_json(o.vmd.resolved())}};
    VMDResult result = [&] {
        if (!o.morphological) return vmd_decompose(s, o.vmd.resolved());
        MfVmdConfig mcfg;
        mcfg.vmd = o.vmd.resolved();
        o.se.apply(mcfg);
        MfVmdResult mf = mf_vmd(s, mcfg);
        cfg["morphology"] = se_config_json(o.se, mcfg);
        cfg["morphology"]["se_width_used"] = mf.se_width_used;
        cfg["morphology"]["se_met_threshold"] = mf.se_met_threshold;
        return std::move(mf.vmd);
    }();

    std::vector<fs::path> artifacts = write_modes(o.out, result);
    json summary = summary_json(result);
    if (cfg.contains("morphology")) summary["morphology"] = cfg["morphology"];
    const fs::path sum = o.out.file(".summary.json");
    write_text_atomic(sum, summary.dump(2) + "\n");
    artifacts.push_back(sum);

    if (o.plot) {
        std::vector<Signal> modes;
        for (const auto& m : result.modes) modes.push_back(m.u);
        const fs::path svg = o.out.file(".modes.svg");
        write_text_atomic(svg, plot_modes(modes, o.out.base + " modes"));
        artifacts.push_back(svg);
    }
    write_provenance(o.out, o.morphological ? "mf-decompose" : "decompose", cfg, artifacts,
                     o.input);
    for (const auto& m : result.modes) std::printf("omega %.6g Hz\n", m.omega_hz);
    std::printf("%s after %zu iterations\n", result.converged ? "converged" : "stopped",
                result.iterations);
    return 0;
}

struct SpectrumOpts {
    std::string input;
    VmdOpts vmd;
    SeOpts se;
    bool morphological = false;
    OutputOpts out;
};

int run_spectrum(SpectrumOpts& o) {
    const Signal s = read_signal_csv(o.input);
    if (o.out.base.empty()) o.out.base = default_base(o.input);

    json cfg{{"vmd", vmd_config_json(o.vmd.resolved())}};
    VMDResult result = [&] {
        if (!o.morphological) return vmd_decompose(s, o.vmd.resolved());
        MfVmdConfig mcfg;
        mcfg.vmd = o.vmd.resolved();
        o.se.apply(mcfg);
        MfVmdResult mf = mf_vmd(s, mcfg);
        cfg["morphology"] = se_config_json(o.se, mcfg);
        cfg["morphology"]["se_width_used"] = mf.se_width_used;
        return std::move(mf.vmd);
    }();

    std::vector<Signal> modes;
    for (const auto& m : result.modes) modes.push_back(m.u);
    const HilbertSpectrum hs = hilbert_spectrum(modes);

    std::vector<fs::path> artifacts;
    char line[128];
    for (std::size_t k = 0; k < hs.per_mode.size(); ++k) {
        const auto& m = hs.per_mode[k];
        std::string body = "time_s,freq_hz,amplitude\n";
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", m.time_at(i), m.freqs[i],
                          m.amps[i]);
            body += line;
        }
        fs::path p = o.out.file(".spectrum.mode" + std::to_string(k + 1) + ".csv");
        write_text_atomic(p, body);
        artifacts.push_back(std::move(p));
    }
    const fs::path svg = o.out.file(".spectrum.svg");
    write_text_atomic(svg, plot_spectrum(hs, o.out.base + " instantaneous frequency"));
    artifacts.push_back(svg);
    write_provenance(o.out, "spectrum", cfg, artifacts, o.input);
    std::printf("wrote %s\n", svg.string().c_str());
    return 0;
}

struct AnalyzeOpts {
    std::string input;
    VmdOpts vmd;
    SeOpts se;
    double velocity = 6000.0;
    double blank_time = 0.3e-3;
    double confidence = 3.0;
    OutputOpts out;
};

int run_analyze(AnalyzeOpts& o) {
    const Signal s = read_signal_csv(o.input);
    if (o.out.base.empty()) o.out.base = default_base(o.input);

    BoltAnalysisConfig acfg;
    acfg.mfvmd.vmd = o.vmd.resolved();
    o.se.apply(acfg.mfvmd);
    acfg.velocity_mps = o.velocity;
    acfg.blank_time_s = o.blank_time;
    acfg.confidence_threshold = o.confidence;

    const MfVmdResult mf = mf_vmd(s, acfg.mfvmd);
    const BoltReport rep = analyze_bolt(mf, acfg);

    json jrep{{"schema", 1},
              {"echo_time_s", rep.echo_time_s},
              {"estimated_length_m", rep.estimated_length_m},
              {"carrier_mode_index", rep.carrier_mode_index},
              {"confidence", rep.confidence},
              {"diagnostics",
               {{"se_width_used", rep.diagnostics.se_width_used},
                {"se_met_threshold", rep.diagnostics.se_met_threshold},
                {"vmd_iterations", rep.diagnostics.vmd_iterations},
                {"vmd_converged", rep.diagnostics.vmd_converged},
                {"duplicate_omegas", rep.diagnostics.duplicate_omegas},
                {"mode_omegas_hz", rep.diagnostics.mode_omegas_hz}}}};
    std::vector<fs::path> artifacts;
    const fs::path jpath = o.out.file(".report.json");
    write_text_atomic(jpath, jrep.dump(2) + "\n");
    artifacts.push_back(jpath);

    const fs::path svg = o.out.file(".analysis.svg");
    write_text_atomic(svg, plot_bolt(s, mf.vmd.modes[rep.carrier_mode_index].u, rep.echo_time_s,
                                     o.out.base + " echo analysis"));
    artifacts.push_back(svg);

    json cfg{{"vmd", vmd_config_json(acfg.mfvmd.vmd)},
             {"morphology", se_config_json(o.se, acfg.mfvmd)},
             {"velocity_mps", o.velocity},
             {"blank_time_s", o.blank_time},
             {"confidence_threshold", o.confidence}};
    write_provenance(o.out, "analyze", cfg, artifacts, o.input);
    std::printf("echo at %.6g ms -> length %.6g m (confidence %.3g, mode %zu)\n",
                rep.echo_time_s * 1e3, rep.estimated_length_m, rep.confidence,
                rep.carrier_mode_index + 1);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signal decomposition for bolt-anchoring echo analysis"};
    app.set_version_flag("--version", std::string("mfvmd ") + kVersion);
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* c_sim = app.add_subcommand("simulate", "Generate a test signal");
    c_sim->add_option("--preset", sim.preset, "eq10 | eq10-noisy | bolt")->required();
    c_sim->add_option("--fs", sim.fs, "Sampling rate override (Hz)");
    c_sim->add_option("--snr", sim.snr_db, "Add noise at this SNR (dB)");
    c_sim->add_option("--seed", sim.seed, "Noise seed")->capture_default_str();
    c_sim->add_flag("--plot", sim.plot, "Also write a waveform SVG");
    c_sim->add_option("--length", sim.bolt.bolt_length_m, "Bolt length (m)");
    c_sim->add_option("--velocity", sim.bolt.wave_velocity_mps, "Wave velocity (m/s)");
    c_sim->add_option("--freq", sim.bolt.pulse_center_freq_hz, "Pulse center frequency (Hz)");
    c_sim->add_option("--pulse-width", sim.bolt.pulse_width_s, "Pulse width (s)");
    c_sim->add_option("--echo-amplitude", sim.bolt.echo_amplitude, "Relative echo amplitude");
    c_sim->add_option("--record-length", sim.bolt.record_length_s, "Record length (s)");
    c_sim->add_option("--decay", sim.bolt.decay_time_s, "Decay time constant (s)");
    add_output_opts(c_sim, sim.out);

    DecomposeOpts dec;
    auto* c_dec = app.add_subcommand("decompose", "Variational mode decomposition of a CSV signal");
    c_dec->add_option("input", dec.input, "Signal CSV")->required();
    add_vmd_opts(c_dec, dec.vmd, 2);
    c_dec->add_flag("--plot", dec.plot, "Also write a stacked-mode SVG");
    add_output_opts(c_dec, dec.out);

    DecomposeOpts mfd;
    mfd.morphological = true;
    auto* c_mfd = app.add_subcommand(
        "mf-decompose", "Morphological filtering followed by decomposition");
    c_mfd->add_option("input", mfd.input, "Signal CSV")->required();
    add_vmd_opts(c_mfd, mfd.vmd, 2);
    add_se_opts(c_mfd, mfd.se);
    c_mfd->add_flag("--plot", mfd.plot, "Also write a stacked-mode SVG");
    add_output_opts(c_mfd, mfd.out);

    SpectrumOpts spec;
    auto* c_spec = app.add_subcommand(
        "spectrum", "Instantaneous-frequency spectrum of the decomposition");
    c_spec->add_option("input", spec.input, "Signal CSV")->required();
    add_vmd_opts(c_spec, spec.vmd, 2);
    c_spec->add_flag("--mf", spec.morphological, "Apply the morphological pre-filter first");
    add_se_opts(c_spec, spec.se);
    add_output_opts(c_spec, spec.out);

    AnalyzeOpts ana;
    auto* c_ana = app.add_subcommand("analyze", "Locate the bottom echo and estimate bolt length");
    c_ana->add_option("input", ana.input, "Record CSV")->required();
    add_vmd_opts(c_ana, ana.vmd, 3);
    add_se_opts(c_ana, ana.se);
    c_ana->add_option("--velocity", ana.velocity, "Wave velocity (m/s)")->capture_default_str();
    c_ana->add_option("--blank-time", ana.blank_time, "Direct-wave mask (s)")
        ->capture_default_str();
    c_ana->add_option("--confidence-threshold", ana.confidence, "Peak-to-median threshold")
        ->capture_default_str();
    add_output_opts(c_ana, ana.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return 2;
    }

    try {
        if (*c_sim) return run_simulate(sim);
        if (*c_dec) return run_decompose(dec);
        if (*c_mfd) return run_decompose(mfd);
        if (*c_spec) return run_spectrum(spec);
        if (*c_ana) return run_analyze(ana);
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return 1;
    }
}
