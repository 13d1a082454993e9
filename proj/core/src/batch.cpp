#include "hedonica/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "hedonica/config_json.hpp"
#include "hedonica/version.hpp"

namespace hedonica {

std::string artifact_version() { return kVersion; }

std::vector<std::uint64_t> BatchResult::seeds() const {
    std::vector<std::uint64_t> out;
    for (const auto& r : runs) out.push_back(r.seed);
    return out;
}

BatchResult run_batch(const SimConfig& config, const BatchOptions& options) {
    if (auto violations = validate_config(config); !violations.empty()) {
        throw ConfigError(std::move(violations));
    }
    const auto n = static_cast<std::size_t>(config.n_runs);
    BatchResult batch;
    batch.config = config;
    batch.runs.resize(n);

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                SimConfig run_config = config;
                run_config.seed = config.seed + i;
                batch.runs[i] = run_simulation(run_config, {options.record_trace, false, true});
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return batch;
}

BatchSummary summarize(const BatchResult& batch) {
    BatchSummary s;
    s.durations = coalition_duration_stats(batch.runs);
    for (auto a : {RiskAttitude::Seeking, RiskAttitude::Averse, RiskAttitude::Neutral}) {
        s.durations_by_attitude[a] = coalition_duration_stats(batch.runs, a);
    }
    double frames = 0.0;
    for (const auto& r : batch.runs) {
        for (const auto& f : r.frames) {
            s.mean_alone += f.alone_count;
            s.mean_solicited += f.solicited_count;
            s.mean_initiator += f.initiator_count;
            frames += 1.0;
        }
    }
    if (frames > 0) {
        s.mean_alone /= frames;
        s.mean_solicited /= frames;
        s.mean_initiator /= frames;
    }
    s.honesty_ledger_total = honesty_utility_profile(batch.runs, GainedUtility::LedgerTotal);
    s.honesty_accrual_only = honesty_utility_profile(batch.runs, GainedUtility::AccrualOnly);
    return s;
}

std::optional<double> peak_honesty_bin(std::span<const HonestyBin> bins) {
    std::optional<double> best_center;
    double best = 0.0;
    for (const auto& b : bins) {
        if (!b.mean_gained_utility) continue;
        if (!best_center || *b.mean_gained_utility > best) {
            best = *b.mean_gained_utility;
            best_center = b.bin_center;
        }
    }
    return best_center;
}

void write_steps_csv(std::ostream& out, const BatchResult& batch) {
    out << kStepsCsvHeader << '\n';
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        for (const auto& f : batch.runs[i].frames) {
            out << fmt::format("{},{},{},{},{},{},{},{:.6f}\n", i, f.step, f.alone_count,
                               f.solicited_count, f.initiator_count, f.coalitions_active,
                               f.coalitions_formed_this_step, f.mean_coalition_size);
        }
    }
}

void write_honesty_csv(std::ostream& out, std::span<const HonestyBin> bins) {
    out << kHonestyCsvHeader << '\n';
    for (const auto& b : bins) {
        out << fmt::format("{:.6f},{},{}\n", b.bin_center,
                           b.mean_gained_utility ? fmt::format("{:.6f}", *b.mean_gained_utility) : "",
                           b.agent_count);
    }
}

namespace {

using json = nlohmann::json;

json to_json(const DurationStats& d) {
    json j;
    j["count"] = d.count;
    j["mean"] = d.mean ? json(*d.mean) : json(nullptr);
    j["min"] = d.count ? json(d.min) : json(nullptr);
    j["max"] = d.count ? json(d.max) : json(nullptr);
    return j;
}

json to_json(std::span<const HonestyBin> bins) {
    json arr = json::array();
    for (const auto& b : bins) {
        arr.push_back({{"bin_center", b.bin_center},
                       {"mean_gained_utility",
                        b.mean_gained_utility ? json(*b.mean_gained_utility) : json(nullptr)},
                       {"agent_count", b.agent_count}});
    }
    return arr;
}

const std::vector<HonestyBin>& bins_for(const BatchSummary& s, GainedUtility mode) {
    return mode == GainedUtility::LedgerTotal ? s.honesty_ledger_total : s.honesty_accrual_only;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

json summary_json(const BatchResult& batch, const BatchSummary& summary) {
    json j;
    j["artifact"] = "hedonica";
    j["version"] = artifact_version();
    j["config"] = config_to_json(batch.config);
    j["seeds"] = batch.seeds();
    json durations = to_json(summary.durations);
    durations["right_censored_included"] = true;
    std::size_t censored = 0;
    for (const auto& r : batch.runs) {
        for (const auto& l : r.lifetimes) censored += l.dissolved_at ? 0 : 1;
    }
    durations["censored_count"] = censored;
    j["coalition_duration"] = durations;
    json by_attitude;
    for (const auto& [a, d] : summary.durations_by_attitude) by_attitude[to_string(a)] = to_json(d);
    j["coalition_duration_by_initiator_attitude"] = by_attitude;
    j["mean_roles_per_step"] = {{"alone", summary.mean_alone},
                                {"solicited", summary.mean_solicited},
                                {"initiator", summary.mean_initiator}};
    j["gained_utility"] = to_string(batch.config.gained_utility);
    j["honesty_profile"] = to_json(bins_for(summary, batch.config.gained_utility));

    RunAudit totals;
    for (const auto& r : batch.runs) {
        totals.proposals_opened += r.counters.proposals_opened;
        totals.proposals_formed += r.counters.proposals_formed;
        totals.proposals_cancelled += r.counters.proposals_cancelled;
        totals.departures += r.counters.departures;
        totals.penalised_departures += r.counters.penalised_departures;
        totals.max_confirms_in_step = std::max(totals.max_confirms_in_step, r.counters.max_confirms_in_step);
        totals.max_proposals_opened_in_step =
            std::max(totals.max_proposals_opened_in_step, r.counters.max_proposals_opened_in_step);
    }
    j["activity"] = {{"proposals_opened", totals.proposals_opened},
                     {"proposals_formed", totals.proposals_formed},
                     {"proposals_cancelled", totals.proposals_cancelled},
                     {"departures", totals.departures},
                     {"penalised_departures", totals.penalised_departures},
                     {"max_confirms_by_one_agent_in_a_step", totals.max_confirms_in_step},
                     {"max_proposals_by_one_agent_in_a_step", totals.max_proposals_opened_in_step}};
    return j;
}

void write_batch_outputs(const std::filesystem::path& dir, const BatchResult& batch,
                         const BatchSummary& summary) {
    std::filesystem::create_directories(dir);
    {
        std::ostringstream os;
        write_steps_csv(os, batch);
        write_file(dir / "steps.csv", os.str());
    }
    {
        std::ostringstream os;
        write_honesty_csv(os, bins_for(summary, batch.config.gained_utility));
        write_file(dir / "honesty.csv", os.str());
    }
    write_file(dir / "summary.json", summary_json(batch, summary).dump(2) + "\n");
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const auto& r = batch.runs[i];
        if (r.trace.empty()) continue;
        std::ostringstream os;
        write_trace(os, {r.config.n_agents, r.config.trust_reward, r.config.trust_punishment, r.seed}, r.trace);
        write_file(dir / fmt::format("trace_run{}.csv", i), os.str());
    }
}

const std::vector<ExperimentArm>& experiment_arms() {
    static const std::vector<ExperimentArm> arms = {
        {"seeking", RiskMix::AllSeeking},
        {"averse", RiskMix::AllAverse},
        {"neutral", RiskMix::AllNeutral},
        {"mixed", RiskMix::EqualThirds},
    };
    return arms;
}

namespace {

bool peak_in_band(const std::optional<double>& peak) {
    // One bin either side of [0.15, 0.20].
    if (!peak) return false;
    const long k = std::lround(*peak * 20.0);
    return k >= 2 && k <= 5;
}

json build_comparison(const ExperimentResult& result) {
    json configs;
    std::map<std::string, const BatchSummary*> by_name;
    for (std::size_t i = 0; i < result.arms.size(); ++i) {
        const auto& [name, batch] = result.arms[i];
        const auto& s = result.summaries[i];
        by_name[name] = &s;
        json c;
        c["risk_mix"] = to_string(batch.config.risk_mix);
        c["coalition_duration"] = to_json(s.durations);
        c["mean_alone"] = s.mean_alone;
        c["mean_solicited"] = s.mean_solicited;
        c["mean_initiator"] = s.mean_initiator;
        c["honesty_profile"] = {{"ledger-total", to_json(s.honesty_ledger_total)},
                                {"accrual-only", to_json(s.honesty_accrual_only)}};
        auto peak_total = peak_honesty_bin(s.honesty_ledger_total);
        auto peak_accrual = peak_honesty_bin(s.honesty_accrual_only);
        c["honesty_peak"] = {{"ledger-total", peak_total ? json(*peak_total) : json(nullptr)},
                             {"accrual-only", peak_accrual ? json(*peak_accrual) : json(nullptr)}};
        if (batch.config.risk_mix == RiskMix::EqualThirds) {
            json by_attitude;
            for (const auto& [a, d] : s.durations_by_attitude) by_attitude[to_string(a)] = to_json(d);
            c["coalition_duration_by_initiator_attitude"] = by_attitude;
        }
        configs[name] = c;
    }

    json orderings;
    auto mean_duration = [&](const std::string& name) {
        return by_name.at(name)->durations.mean.value_or(0.0);
    };
    if (by_name.contains("seeking") && by_name.contains("averse") && by_name.contains("neutral")) {
        const double ds = mean_duration("seeking"), da = mean_duration("averse"), dn = mean_duration("neutral");
        const auto& s = *by_name.at("seeking");
        const auto& a = *by_name.at("averse");
        const auto& n = *by_name.at("neutral");
        orderings["duration_seeking_lt_averse"] = ds < da;
        orderings["duration_averse_lt_neutral"] = da < dn;
        orderings["duration_seeking_lt_averse_lt_neutral"] = ds < da && da < dn;
        orderings["alone_lowest_in_seeking"] = s.mean_alone < a.mean_alone && s.mean_alone < n.mean_alone;
        orderings["initiators_lowest_in_neutral"] =
            n.mean_initiator < s.mean_initiator && n.mean_initiator < a.mean_initiator;
        json peaks;
        for (auto mode : {GainedUtility::LedgerTotal, GainedUtility::AccrualOnly}) {
            peaks[to_string(mode)] = peak_in_band(peak_honesty_bin(bins_for(s, mode))) &&
                                     peak_in_band(peak_honesty_bin(bins_for(n, mode)));
        }
        orderings["honesty_peak_near_0.15_0.20_seeking_and_neutral"] = peaks;
    }

    json out;
    out["artifact"] = "hedonica";
    out["version"] = artifact_version();
    out["configurations"] = configs;
    out["orderings"] = orderings;
    return out;
}

}  // namespace

ExperimentResult run_experiment(const SimConfig& base, const BatchOptions& options) {
    ExperimentResult result;
    for (const auto& arm : experiment_arms()) {
        SimConfig config = base;
        config.risk_mix = arm.mix;
        auto batch = run_batch(config, options);
        result.summaries.push_back(summarize(batch));
        result.arms.emplace_back(arm.name, std::move(batch));
    }
    result.comparison = build_comparison(result);
    return result;
}

void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentResult& result) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < result.arms.size(); ++i) {
        write_batch_outputs(dir / result.arms[i].first, result.arms[i].second, result.summaries[i]);
    }
    write_file(dir / "comparison.json", result.comparison.dump(2) + "\n");
}

}  // namespace hedonica
