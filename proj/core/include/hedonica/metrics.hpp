#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

struct WorldState;
struct RunResult;
struct CoalitionLifetime;

/// End-of-step population snapshot.
struct StepFrame {
    Step step = 0;
    int alone_count = 0;
    int solicited_count = 0;
    int initiator_count = 0;
    int coalitions_active = 0;
    int coalitions_formed_this_step = 0;
    double mean_coalition_size = 0.0;
};

struct RoleCounts {
    int alone = 0;
    int solicited = 0;
    int initiator = 0;
};

RoleCounts classify_roles(const WorldState& state);

/// Nearest multiple of 0.05; exact midpoints round up.
double honesty_bin_center(double honesty);

struct HonestyBin {
    double bin_center = 0.0;
    std::optional<double> mean_gained_utility;  // nullopt for an empty bin
    int agent_count = 0;
};

/// Pools every agent of every run into its honesty bin and averages gained
/// utility. Bins run from 0 to the largest configured honesty, empty ones
/// included.
std::vector<HonestyBin> honesty_utility_profile(std::span<const RunResult> runs, GainedUtility mode);

struct DurationStats {
    std::size_t count = 0;
    std::optional<double> mean;
    Step min = 0;
    Step max = 0;
};

/// Inclusive duration of a coalition: from its formation step to the step
/// it dissolved, or to `final_step` if it was still alive.
Step coalition_duration(const CoalitionLifetime& lifetime, Step final_step);

DurationStats coalition_duration_stats(std::span<const CoalitionLifetime> lifetimes, Step final_step);
DurationStats coalition_duration_stats(std::span<const RunResult> runs);
DurationStats coalition_duration_stats(std::span<const RunResult> runs, RiskAttitude initiator_attitude);

struct MeanStepFrame {
    Step step = 0;
    double alone = 0.0;
    double solicited = 0.0;
    double initiator = 0.0;
    double coalitions_active = 0.0;
    double formed_this_step = 0.0;
    double mean_coalition_size = 0.0;
};

/// Per-step mean of every frame field across runs. All runs must have the
/// same number of steps.
std::vector<MeanStepFrame> aggregate_runs(std::span<const std::vector<StepFrame>> runs);

}  // namespace hedonica
