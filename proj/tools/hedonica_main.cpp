// hedonica: run coalition-formation simulations and check their traces.
//
//   hedonica run          [--config FILE] [--seed N] [--out DIR] [--overrides k=v ...]
//   hedonica experiment   [same flags]     four population compositions + comparison.json
//   hedonica replay-check --trace FILE
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 configuration error,
// 3 replay inconsistency.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hedonica/batch.hpp"
#include "hedonica/config_json.hpp"
#include "hedonica/engine.hpp"
#include "hedonica/trace.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hedonica;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInconsistent = 3;

struct Invocation {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<std::string> overrides;
    bool trace = false;
    bool dump_trust = false;
    unsigned threads = 0;
};

void add_common_flags(CLI::App& cmd, Invocation& inv) {
    cmd.add_option("--config", inv.config_path, "JSON config file (keys are config field names)");
    cmd.add_option("--seed", inv.seed, "Base seed; run i uses seed + i");
    cmd.add_option("--out", inv.out_dir, "Output directory (default: $HEDONICA_OUT, else ./out)");
    cmd.add_option("--overrides", inv.overrides, "key=value config overrides")->expected(1, -1);
    cmd.add_flag("--trace", inv.trace, "Write an event trace per run (trace_run<i>.csv)");
    cmd.add_flag("--dump-trust", inv.dump_trust, "Write each run's final trust matrix (trust_run<i>.csv)");
    cmd.add_option("--threads", inv.threads, "Worker threads for independent runs (0 = auto)");
}

fs::path resolve_out_dir(const Invocation& inv) {
    if (!inv.out_dir.empty()) return inv.out_dir;
    if (const char* env = std::getenv("HEDONICA_OUT"); env && *env) return env;
    return "out";
}

// Reads the config file, applies overrides and the seed flag. Returns
// nullopt after printing the problem when the config is unusable.
std::optional<SimConfig> load_config(const Invocation& inv) {
    SimConfig config;
    try {
        if (!inv.config_path.empty()) {
            std::ifstream in(inv.config_path);
            if (!in) {
                std::cerr << "error: cannot read config file " << inv.config_path << "\n";
                return std::nullopt;
            }
            config = config_from_json(nlohmann::json::parse(in));
        }
        for (const auto& kv : inv.overrides) apply_override(config, kv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::nullopt;
    }
    if (inv.seed) config.seed = *inv.seed;
    const auto violations = validate_config(config);
    for (const auto& v : violations) std::cerr << "error: " << v.field << ": " << v.message << "\n";
    if (!violations.empty()) return std::nullopt;
    return config;
}

void dump_trust(const fs::path& dir, const BatchResult& batch) {
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const auto& trust = batch.runs[i].final_trust;
        const auto path = dir / fmt::format("trust_run{}.csv", i);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        for (std::size_t a = 0; a < trust.size(); ++a) {
            for (std::size_t b = 0; b < trust.size(); ++b) {
                if (b) out << ',';
                out << fmt::format("{:.6f}", trust.at(AgentId{a}, AgentId{b}));
            }
            out << '\n';
        }
    }
}

int cmd_run(const Invocation& inv) {
    auto config = load_config(inv);
    if (!config) return kExitConfig;
    const fs::path dir = resolve_out_dir(inv);
    try {
        auto batch = run_batch(*config, {inv.threads, inv.trace});
        write_batch_outputs(dir, batch, summarize(batch));
        if (inv.dump_trust) dump_trust(dir, batch);
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    std::cout << "wrote " << config->n_runs << " run(s) to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_experiment(const Invocation& inv) {
    auto config = load_config(inv);
    if (!config) return kExitConfig;
    const fs::path dir = resolve_out_dir(inv);
    try {
        auto result = run_experiment(*config, {inv.threads, inv.trace});
        write_experiment_outputs(dir, result);
        if (inv.dump_trust) {
            for (const auto& [name, batch] : result.arms) dump_trust(dir / name, batch);
        }
        for (std::size_t i = 0; i < result.arms.size(); ++i) {
            const auto& s = result.summaries[i];
            std::cout << fmt::format("{:<8} duration {:>6.2f}  alone {:>5.2f}  solicited {:>5.2f}  initiator {:>5.2f}\n",
                                     result.arms[i].first, s.durations.mean.value_or(0.0), s.mean_alone,
                                     s.mean_solicited, s.mean_initiator);
        }
        std::cout << result.comparison["orderings"].dump(2) << "\n";
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_replay_check(const std::string& trace_path) {
    std::ifstream in(trace_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read trace file " << trace_path << "\n";
        return kExitFailure;
    }
    const auto report = replay_check(in);
    if (!report.consistent) {
        std::cerr << "inconsistent";
        if (report.step) std::cerr << " at step " << *report.step;
        std::cerr << " (line " << report.line << "): " << report.message << "\n";
        return kExitInconsistent;
    }
    std::cout << "consistent\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"History-based hedonic coalition formation simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hedonica::artifact_version());

    Invocation run_inv;
    auto* run = app.add_subcommand("run", "Run n_runs seeded simulations and write metrics");
    add_common_flags(*run, run_inv);

    Invocation exp_inv;
    auto* experiment = app.add_subcommand("experiment", "Run the four population compositions");
    add_common_flags(*experiment, exp_inv);

    std::string trace_path;
    auto* replay = app.add_subcommand("replay-check", "Re-derive and verify an event trace");
    replay->add_option("--trace", trace_path, "Trace file written by `run --trace`")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*run) return cmd_run(run_inv);
    if (*experiment) return cmd_experiment(exp_inv);
    if (*replay) return cmd_replay_check(trace_path);
    return kExitConfig;
}
