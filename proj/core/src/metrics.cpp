#include "hedonica/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "hedonica/engine.hpp"

namespace hedonica {

RoleCounts classify_roles(const WorldState& state) {
    RoleCounts counts;
    for (std::size_t i = 0; i < state.n_agents(); ++i) {
        const Coalition* c = state.coalition_of(AgentId{i});
        if (!c) {
            ++counts.alone;
        } else if (c->initiator == AgentId{i}) {
            ++counts.initiator;
        } else {
            ++counts.solicited;
        }
    }
    return counts;
}

namespace {
// Bins are 0.05 wide; index k has center k / 20. Multiplying by 20 is exact
// for the midpoints (k + 0.5) / 20 that matter for the tie rule.
long honesty_bin_index(double honesty) { return std::lround(std::floor(honesty * 20.0 + 0.5)); }
}  // namespace

double honesty_bin_center(double honesty) {
    return static_cast<double>(honesty_bin_index(honesty)) / 20.0;
}

std::vector<HonestyBin> honesty_utility_profile(std::span<const RunResult> runs, GainedUtility mode) {
    long top = 0;
    for (const auto& r : runs) {
        top = std::max(top, honesty_bin_index(r.config.honesty_max));
        for (const auto& p : r.profiles) top = std::max(top, honesty_bin_index(p.honesty));
    }
    std::vector<double> sums(static_cast<std::size_t>(top) + 1, 0.0);
    std::vector<int> counts(sums.size(), 0);
    for (const auto& r : runs) {
        for (std::size_t i = 0; i < r.profiles.size(); ++i) {
            const auto k = static_cast<std::size_t>(std::max(0L, honesty_bin_index(r.profiles[i].honesty)));
            sums[k] += r.ledger.gained(AgentId{i}, mode);
            ++counts[k];
        }
    }
    std::vector<HonestyBin> bins(sums.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
        bins[k].bin_center = static_cast<double>(k) / 20.0;
        bins[k].agent_count = counts[k];
        if (counts[k] > 0) bins[k].mean_gained_utility = sums[k] / counts[k];
    }
    return bins;
}

Step coalition_duration(const CoalitionLifetime& lifetime, Step final_step) {
    return lifetime.dissolved_at.value_or(final_step) - lifetime.formed_at + 1;
}

DurationStats coalition_duration_stats(std::span<const CoalitionLifetime> lifetimes, Step final_step) {
    DurationStats stats;
    double total = 0.0;
    for (const auto& l : lifetimes) {
        const Step d = coalition_duration(l, final_step);
        if (stats.count == 0) {
            stats.min = stats.max = d;
        } else {
            stats.min = std::min(stats.min, d);
            stats.max = std::max(stats.max, d);
        }
        total += static_cast<double>(d);
        ++stats.count;
    }
    if (stats.count > 0) stats.mean = total / static_cast<double>(stats.count);
    return stats;
}

namespace {
template <typename Filter>
DurationStats pooled_durations(std::span<const RunResult> runs, Filter keep) {
    DurationStats stats;
    double total = 0.0;
    for (const auto& r : runs) {
        std::vector<CoalitionLifetime> selected;
        for (const auto& l : r.lifetimes) {
            if (keep(l)) selected.push_back(l);
        }
        const auto s = coalition_duration_stats(selected, r.config.n_steps);
        if (s.count == 0) continue;
        stats.min = stats.count == 0 ? s.min : std::min(stats.min, s.min);
        stats.max = stats.count == 0 ? s.max : std::max(stats.max, s.max);
        total += *s.mean * static_cast<double>(s.count);
        stats.count += s.count;
    }
    if (stats.count > 0) stats.mean = total / static_cast<double>(stats.count);
    return stats;
}
}  // namespace

DurationStats coalition_duration_stats(std::span<const RunResult> runs) {
    return pooled_durations(runs, [](const CoalitionLifetime&) { return true; });
}

DurationStats coalition_duration_stats(std::span<const RunResult> runs, RiskAttitude initiator_attitude) {
    return pooled_durations(runs, [initiator_attitude](const CoalitionLifetime& l) {
        return l.initiator_attitude == initiator_attitude;
    });
}

std::vector<MeanStepFrame> aggregate_runs(std::span<const std::vector<StepFrame>> runs) {
    if (runs.empty()) return {};
    const auto steps = runs.front().size();
    for (const auto& r : runs) {
        if (r.size() != steps) {
            throw PreconditionError("cannot aggregate runs with different step counts");
        }
    }
    std::vector<MeanStepFrame> out(steps);
    const double n = static_cast<double>(runs.size());
    for (std::size_t k = 0; k < steps; ++k) {
        auto& m = out[k];
        m.step = runs.front()[k].step;
        for (const auto& r : runs) {
            const auto& f = r[k];
            m.alone += f.alone_count;
            m.solicited += f.solicited_count;
            m.initiator += f.initiator_count;
            m.coalitions_active += f.coalitions_active;
            m.formed_this_step += f.coalitions_formed_this_step;
            m.mean_coalition_size += f.mean_coalition_size;
        }
        m.alone /= n;
        m.solicited /= n;
        m.initiator /= n;
        m.coalitions_active /= n;
        m.formed_this_step /= n;
        m.mean_coalition_size /= n;
    }
    return out;
}

}  // namespace hedonica
