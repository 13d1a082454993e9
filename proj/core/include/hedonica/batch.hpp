#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hedonica/config.hpp"
#include "hedonica/engine.hpp"
#include "hedonica/metrics.hpp"

namespace hedonica {

struct BatchOptions {
    unsigned threads = 0;  // 0: one per hardware thread
    bool record_trace = false;
};

/// n_runs independent simulations; run i is seeded with config.seed + i.
struct BatchResult {
    SimConfig config;
    std::vector<RunResult> runs;

    std::vector<std::uint64_t> seeds() const;
};

/// Runs may execute concurrently; results are always ordered by run index.
BatchResult run_batch(const SimConfig& config, const BatchOptions& options = {});

struct BatchSummary {
    DurationStats durations;
    std::map<RiskAttitude, DurationStats> durations_by_attitude;
    double mean_alone = 0.0;
    double mean_solicited = 0.0;
    double mean_initiator = 0.0;
    std::vector<HonestyBin> honesty_ledger_total;
    std::vector<HonestyBin> honesty_accrual_only;
};

BatchSummary summarize(const BatchResult& batch);

/// Honesty bin with the highest mean gained utility (first one on ties).
std::optional<double> peak_honesty_bin(std::span<const HonestyBin> bins);

// Output files. Reals use 6 fixed decimals; lines end in '\n'.
inline constexpr const char* kStepsCsvHeader =
    "run,step,alone,solicited,initiator,coalitions_active,formed_this_step,mean_coalition_size";
inline constexpr const char* kHonestyCsvHeader = "bin_center,mean_gained_utility,agent_count";

void write_steps_csv(std::ostream& out, const BatchResult& batch);
void write_honesty_csv(std::ostream& out, std::span<const HonestyBin> bins);
nlohmann::json summary_json(const BatchResult& batch, const BatchSummary& summary);

/// steps.csv, honesty.csv and summary.json into `dir` (created if needed),
/// plus trace_run<i>.csv per run when traces were recorded.
void write_batch_outputs(const std::filesystem::path& dir, const BatchResult& batch,
                         const BatchSummary& summary);

/// The four population compositions: all seeking, all averse, all neutral,
/// equal thirds.
struct ExperimentArm {
    std::string name;
    RiskMix mix;
};
const std::vector<ExperimentArm>& experiment_arms();

struct ExperimentResult {
    std::vector<std::pair<std::string, BatchResult>> arms;
    std::vector<BatchSummary> summaries;  // parallel to `arms`
    nlohmann::json comparison;
};

ExperimentResult run_experiment(const SimConfig& base, const BatchOptions& options = {});

/// Writes one subdirectory per arm plus comparison.json.
void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentResult& result);

std::string artifact_version();

}  // namespace hedonica
