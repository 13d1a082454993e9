// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Criteria 1-5 run the default four-arm experiment; the rest are property
// sweeps over the core library.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "hedonica/batch.hpp"
#include "hedonica/engine.hpp"
#include "hedonica/strategy.hpp"
#include "hedonica/trace.hpp"
#include "hedonica/trust.hpp"
#include "hedonica/utility.hpp"
#include "support.hpp"

using namespace hedonica;
using hedonica::fixtures::random_coalition;
using hedonica::fixtures::random_profile;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct ArmStats {
    double duration = 0.0;
    double alone = 0.0;
    double initiators = 0.0;
    std::optional<double> peak_total;
    std::optional<double> peak_accrual;
};

// The experiment is shared by criteria 1-5.
class ExperimentFixture {
public:
    const std::map<std::string, ArmStats>& arms() {
        if (arms_.empty()) {
            const auto result = run_experiment(SimConfig{});
            for (std::size_t i = 0; i < result.arms.size(); ++i) {
                const auto& s = result.summaries[i];
                arms_[result.arms[i].first] = {s.durations.mean.value_or(0.0), s.mean_alone, s.mean_initiator,
                                               peak_honesty_bin(s.honesty_ledger_total),
                                               peak_honesty_bin(s.honesty_accrual_only)};
            }
        }
        return arms_;
    }

private:
    std::map<std::string, ArmStats> arms_;
};

ExperimentFixture experiment;

std::string triple(double s, double a, double n) { return fmt::format("seeking={:.3f} averse={:.3f} neutral={:.3f}", s, a, n); }

Verdict duration_ordering() {
    const auto& a = experiment.arms();
    const double s = a.at("seeking").duration, v = a.at("averse").duration, n = a.at("neutral").duration;
    return {s < v && v < n, "mean duration " + triple(s, v, n)};
}

Verdict duration_bands() {
    const auto& a = experiment.arms();
    const double s = a.at("seeking").duration, v = a.at("averse").duration, n = a.at("neutral").duration;
    const bool ok = s >= 4.0 && s <= 12.0 && v >= 6.0 && v <= 18.0 && n >= 8.5 && n <= 26.0;
    return {ok, "bands [4,12] [6,18] [8.5,26]; " + triple(s, v, n)};
}

Verdict alone_lowest_in_seeking() {
    const auto& a = experiment.arms();
    const double s = a.at("seeking").alone, v = a.at("averse").alone, n = a.at("neutral").alone;
    return {s < v && s < n, "mean alone " + triple(s, v, n)};
}

Verdict initiators_lowest_in_neutral() {
    const auto& a = experiment.arms();
    const double s = a.at("seeking").initiators, v = a.at("averse").initiators, n = a.at("neutral").initiators;
    return {n < s && n < v, "mean initiators " + triple(s, v, n)};
}

Verdict honesty_peak() {
    const auto& a = experiment.arms();
    const auto near = [](const std::optional<double>& p) { return p && *p > 0.075 && *p < 0.275; };
    const auto show = [](const std::optional<double>& p) { return p ? fmt::format("{:.2f}", *p) : std::string("none"); };
    const bool total = near(a.at("seeking").peak_total) && near(a.at("neutral").peak_total);
    const bool accrual = near(a.at("seeking").peak_accrual) && near(a.at("neutral").peak_accrual);
    return {total || accrual,
            fmt::format("ledger-total {} (seeking {}, neutral {}); accrual-only {} (seeking {}, neutral {})",
                        total ? "pass" : "fail", show(a.at("seeking").peak_total), show(a.at("neutral").peak_total),
                        accrual ? "pass" : "fail", show(a.at("seeking").peak_accrual),
                        show(a.at("neutral").peak_accrual))};
}

Verdict switch_thresholds() {
    bool ok = true;
    for (const auto& [h, target] : {std::pair{0.1, 1100.0}, std::pair{0.4, 1400.0}}) {
        const double threshold = 1000.0 * (1.0 + h);
        ok = ok && threshold == target;
        ok = ok && !should_switch(1000.0, threshold, h, 0.0);
        ok = ok && should_switch(1000.0, std::nextafter(threshold, 2.0 * threshold), h, 0.0);
        ok = ok && !should_switch(1000.0, std::nextafter(threshold, 0.0), h, 0.0);
    }
    return {ok, "1000 -> 1100 at H=0.1 and 1000 -> 1400 at H=0.4, strict at +-1 ulp"};
}

Verdict trust_arithmetic() {
    SimConfig config;
    config.n_agents = 2;
    auto t = init_trust(2);
    apply_trust_event(t, {AgentId{0}, AgentId{1}, TrustEventKind::Stayed, 1}, config);
    apply_trust_event(t, {AgentId{1}, AgentId{0}, TrustEventKind::Left, 1}, config);
    bool ok = t.at(AgentId{0}, AgentId{1}) == 0.51 && t.at(AgentId{1}, AgentId{0}) == 0.45;

    Rng rng(77);
    constexpr std::size_t n = 6;
    config.n_agents = static_cast<int>(n);
    for (int stream = 0; stream < 10000 && ok; ++stream) {
        auto m = init_trust(static_cast<int>(n));
        for (int e = 0; e < 50; ++e) {
            const AgentId i{rng.uniform_index(n)};
            AgentId j{rng.uniform_index(n - 1)};
            if (j.value >= i.value) ++j.value;
            const auto kind = rng.uniform_index(3) == 0 ? TrustEventKind::Left : TrustEventKind::Stayed;
            apply_trust_event(m, {i, j, kind, e}, config);
            const double v = m.at(i, j);
            ok = ok && v >= 0.0 && v <= 1.0;
        }
    }
    return {ok, "0.5 -> 0.51 / 0.45 exact; 10^4 random streams stay in [0,1]"};
}

Verdict distance_axioms() {
    Rng rng(88);
    constexpr int n = 20;
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        const auto a = random_coalition(n, 1, n, rng);
        const auto b = random_coalition(n, 1, n, rng);
        const auto c = random_coalition(n, 1, n, rng);
        const double ab = coalition_distance(a, b, n), ba = coalition_distance(b, a, n);
        const double ac = coalition_distance(a, c, n), cb = coalition_distance(c, b, n);
        ok = coalition_distance(a, a, n) == 0.0 && (ab == 0.0) == (a == b) && ab == ba && ab >= 0.0 &&
             ab <= 1.0 && ab <= ac + cb + 1e-12;
    }
    return {ok, "identity, symmetry, range, triangle over 10^4 triples, n = 20"};
}

Verdict utility_oracle() {
    Rng rng(99);
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        const std::size_t n = 8;
        const auto p = random_profile(n, rng);
        const auto c = random_coalition(n, 1, 6, rng);
        const AgentId agent = c.members()[rng.uniform_index(c.size())];
        double expected = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            if (!c.contains(AgentId{a})) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (a != b && c.contains(AgentId{b})) expected += p.interaction.at(AgentId{a}, AgentId{b});
            }
        }
        ok = coalition_utility(agent, c, p) == expected;
    }
    return {ok, "exact match with a double loop on 10^3 instances"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict determinism() {
    const auto root = fs::temp_directory_path() / "hedonica_acceptance_determinism";
    fs::remove_all(root);
    SimConfig config;
    config.n_runs = 4;
    for (const char* dir : {"a", "b"}) {
        const auto batch = run_batch(config, {0, true});
        write_batch_outputs(root / dir, batch, summarize(batch));
    }
    std::size_t compared = 0;
    bool ok = true;
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        const auto name = entry.path().filename();
        ok = ok && fs::exists(root / "b" / name) && slurp(entry.path()) == slurp(root / "b" / name);
        ++compared;
    }
    fs::remove_all(root);
    ok = ok && compared == 3 + 4;
    return {ok, fmt::format("{} output files byte-identical across two invocations", compared)};
}

Verdict structural_sweep() {
    SimConfig config;
    std::vector<std::string> problems;
    const auto fail = [&](std::uint64_t seed, const std::string& what) {
        if (problems.size() < 5) problems.push_back(fmt::format("seed {}: {}", seed, what));
    };
    std::size_t formed_total = 0;
    for (int run = 0; run < config.n_runs; ++run) {
        auto c = config;
        c.seed = config.seed + static_cast<std::uint64_t>(run);
        RunResult r;
        try {
            r = run_simulation(c, {true, true, true});  // per-step invariant checks throw
        } catch (const std::exception& e) {
            fail(c.seed, e.what());
            continue;
        }
        for (const auto& f : r.frames) {
            if (f.alone_count + f.solicited_count + f.initiator_count != c.n_agents) fail(c.seed, "role sum");
            if (f.initiator_count != f.coalitions_active) fail(c.seed, "initiator count");
        }
        for (const auto& v : check_ledger_conservation(r.ledger.entries())) fail(c.seed, v);
        if (r.counters.max_proposals_opened_in_step > c.max_proposals_per_step) fail(c.seed, "proposal budget");
        if (r.counters.max_confirms_in_step > c.max_confirms_per_step) fail(c.seed, "confirm budget");

        // Formed => every solicited member said yes and confirmed.
        std::map<ProposalId, std::size_t> yes, confirmed;
        for (const auto& e : r.audit) {
            if (e.event == "agree-yes") ++yes[e.proposal];
            if (e.event == "confirm") ++confirmed[e.proposal];
        }
        for (const auto& ev : r.trace) {
            if (ev.kind != "form") continue;
            const auto first = ev.object.find(':');
            const auto second = ev.object.find(':', first + 1);
            const ProposalId pid = std::stoll(ev.object.substr(first + 1, second - first - 1));
            std::istringstream members(ev.object.substr(second + 1));
            std::size_t k = 0;
            for (std::size_t m; members >> m;) ++k;
            if (yes[pid] != k - 1 || confirmed[pid] != k - 1) fail(c.seed, fmt::format("consent of proposal {}", pid));
            ++formed_total;
        }

        // Partition, ledger and trust re-derived from the trace alone.
        std::stringstream trace;
        write_trace(trace, {c.n_agents, c.trust_reward, c.trust_punishment, c.seed}, r.trace);
        const auto report = replay_check(trace);
        if (!report.consistent) fail(c.seed, "replay: " + report.message);
    }
    std::string detail = fmt::format("20 runs x 100 steps x 20 agents, {} formations audited", formed_total);
    for (const auto& p : problems) detail += "; " + p;
    return {problems.empty() && formed_total > 0, detail};
}

Verdict ranking_invariance() {
    Rng rng(1313);
    constexpr std::size_t n = 12;
    SimConfig config;
    config.n_agents = static_cast<int>(n);
    config.comm_cost = 0.0;
    config.max_proposals_per_step = 1000;
    const auto order = [](const std::vector<ScoredCandidate>& v) {
        std::vector<CoalitionSet> out;
        for (const auto& s : v) out.push_back(s.coalition);
        return out;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const AgentId initiator{rng.uniform_index(n)};
        auto profile = random_profile(n, rng);
        ProposalHistory history(n);
        for (int r = 0; r < 8; ++r) {
            const auto c = random_coalition(n, 2, 6, rng);
            const AgentId other = c.members()[rng.uniform_index(c.size())];
            if (other == initiator) continue;
            const auto kind = rng.uniform_index(3);
            if (kind == 0) history.record_received(c, other, r);
            else history.record_response(c, other, kind == 1, r);
        }
        std::vector<CoalitionSet> candidates;
        for (int k = 0; k < 10; ++k) {
            auto c = random_coalition(n, 1, 5, rng);
            c.insert(initiator);
            if (c.size() >= 2 && std::find(candidates.begin(), candidates.end(), c) == candidates.end()) {
                candidates.push_back(c);
            }
        }
        const double k = std::exp(rng.uniform_real(std::log(0.01), std::log(100.0)));
        auto scaled = profile;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) scaled.interaction.at(AgentId{a}, AgentId{b}) *= k;
        }
        for (auto attitude : {RiskAttitude::Seeking, RiskAttitude::Averse, RiskAttitude::Neutral}) {
            profile.risk_attitude = scaled.risk_attitude = attitude;
            const InitiatorContext base{profile, history, std::nullopt, 0.0, false};
            const InitiatorContext big{scaled, history, std::nullopt, 0.0, false};
            if (order(select_proposals(initiator, candidates, base, config)) !=
                order(select_proposals(initiator, candidates, big, config))) {
                return {false, fmt::format("order changed in trial {} (k = {:.4f}, {})", trial, k, to_string(attitude))};
            }
        }
    }
    return {true, "order unchanged under k in [0.01, 100] for all attitudes, 10^3 candidate sets"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"duration ordering seeking < averse < neutral", duration_ordering},
        {"duration calibration bands", duration_bands},
        {"fewest alone agents in the all-seeking population", alone_lowest_in_seeking},
        {"fewest live coalitions in the all-neutral population", initiators_lowest_in_neutral},
        {"honesty peak near 0.15-0.20 (seeking and neutral)", honesty_peak},
        {"switch thresholds", switch_thresholds},
        {"trust arithmetic and clamping", trust_arithmetic},
        {"coalition distance is a metric", distance_axioms},
        {"coalition utility matches brute force", utility_oracle},
        {"byte-identical outputs", determinism},
        {"structural invariants over full traces", structural_sweep},
        {"ranking invariant under utility scaling", ranking_invariance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        fmt::print("{} {:2} {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
