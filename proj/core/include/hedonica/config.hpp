#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hedonica/types.hpp"

namespace hedonica {

enum class RiskMix { AllSeeking, AllAverse, AllNeutral, EqualThirds };
enum class ResponderMix { UniformRandom, AllEarly, AllLazy, AllRandom };

/// Which ledger flows count as an agent's "gained utility" in the honesty
/// profile.
enum class GainedUtility { LedgerTotal, AccrualOnly };

std::string to_string(RiskMix mix);
std::string to_string(ResponderMix mix);
std::string to_string(GainedUtility mode);
std::optional<RiskMix> parse_risk_mix(std::string_view text);
std::optional<ResponderMix> parse_responder_mix(std::string_view text);
std::optional<GainedUtility> parse_gained_utility(std::string_view text);

struct SimConfig {
    int n_agents = 20;
    int n_steps = 100;
    int n_runs = 20;
    std::uint64_t seed = 1;

    double bad_reputation_coeff = 0.15;
    double honesty_min = 0.0;
    double honesty_max = 0.35;

    int response_deadline = 3;
    int confirm_deadline = 3;

    int obligatory_stay = 5;
    double leave_penalty = 200.0;
    double enroll_fee = 10.0;
    double initiator_reward_share = 0.5;
    double comm_cost = 1.0;
    double step_coeff = 0.55;

    double trust_reward = 0.01;
    double trust_punishment = 0.05;

    double alpha = 2.0;
    double beta = 0.75;

    int max_proposals_per_step = 1;
    int max_confirms_per_step = 2;

    int candidate_random_count = 10;
    int candidate_sent_count = 5;
    int candidate_recv_count = 5;
    int random_coalition_size_max = 5;

    RiskMix risk_mix = RiskMix::EqualThirds;
    ResponderMix responder_mix = ResponderMix::UniformRandom;
    GainedUtility gained_utility = GainedUtility::LedgerTotal;
};

struct ConfigViolation {
    std::string field;
    std::string message;
};

/// Every violated invariant of `config`; empty when the config is usable.
std::vector<ConfigViolation> validate_config(const SimConfig& config);

/// Risk attitude assigned to `agent` under the configured mix.
/// EqualThirds hands the n mod 3 lowest ids Seeking, Averse in turn, then
/// cycles Seeking, Averse, Neutral over the rest, so each attitude gets
/// floor(n/3) agents plus at most one.
RiskAttitude assigned_attitude(const SimConfig& config, AgentId agent);

}  // namespace hedonica
