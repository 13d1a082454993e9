#include "hedonica/config.hpp"

#include <cmath>

namespace hedonica {

std::string to_string(RiskMix mix) {
    switch (mix) {
    case RiskMix::AllSeeking: return "all-seeking";
    case RiskMix::AllAverse: return "all-averse";
    case RiskMix::AllNeutral: return "all-neutral";
    case RiskMix::EqualThirds: return "equal-thirds";
    }
    return "unknown";
}

std::string to_string(ResponderMix mix) {
    switch (mix) {
    case ResponderMix::UniformRandom: return "uniform-random";
    case ResponderMix::AllEarly: return "all-early";
    case ResponderMix::AllLazy: return "all-lazy";
    case ResponderMix::AllRandom: return "all-random";
    }
    return "unknown";
}

std::string to_string(GainedUtility mode) {
    switch (mode) {
    case GainedUtility::LedgerTotal: return "ledger-total";
    case GainedUtility::AccrualOnly: return "accrual-only";
    }
    return "unknown";
}

std::optional<RiskMix> parse_risk_mix(std::string_view text) {
    for (auto m : {RiskMix::AllSeeking, RiskMix::AllAverse, RiskMix::AllNeutral,
                   RiskMix::EqualThirds}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

std::optional<ResponderMix> parse_responder_mix(std::string_view text) {
    for (auto m : {ResponderMix::UniformRandom, ResponderMix::AllEarly, ResponderMix::AllLazy,
                   ResponderMix::AllRandom}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

std::optional<GainedUtility> parse_gained_utility(std::string_view text) {
    for (auto m : {GainedUtility::LedgerTotal, GainedUtility::AccrualOnly}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

std::vector<ConfigViolation> validate_config(const SimConfig& c) {
    std::vector<ConfigViolation> out;
    auto fail = [&](std::string field, std::string message) {
        out.push_back({std::move(field), std::move(message)});
    };
    auto finite = [](double v) { return std::isfinite(v); };

    if (c.n_agents < 2) fail("n_agents", "must be at least 2");
    if (c.n_steps < 0) fail("n_steps", "must be non-negative");
    if (c.n_runs < 1) fail("n_runs", "must be at least 1");
    if (!finite(c.bad_reputation_coeff) || c.bad_reputation_coeff < 0.0 ||
        c.bad_reputation_coeff >= 1.0) {
        fail("bad_reputation_coeff", "must lie in [0, 1)");
    }
    if (!finite(c.honesty_min) || !finite(c.honesty_max) || c.honesty_min < 0.0 ||
        c.honesty_min > c.honesty_max) {
        fail("honesty_min/honesty_max", "need 0 <= honesty_min <= honesty_max");
    }
    if (c.response_deadline < 1) fail("response_deadline", "must be at least 1 step");
    if (c.confirm_deadline < 1) fail("confirm_deadline", "must be at least 1 step");
    if (c.obligatory_stay < 0) fail("obligatory_stay", "must be non-negative");
    if (!finite(c.leave_penalty) || c.leave_penalty < 0.0) {
        fail("leave_penalty", "must be finite and non-negative");
    }
    if (!finite(c.enroll_fee) || c.enroll_fee < 0.0) {
        fail("enroll_fee", "must be finite and non-negative");
    }
    if (!finite(c.initiator_reward_share) || c.initiator_reward_share < 0.0 ||
        c.initiator_reward_share > 1.0) {
        fail("initiator_reward_share", "must lie in [0, 1]");
    }
    if (!finite(c.comm_cost) || c.comm_cost < 0.0) {
        fail("comm_cost", "must be finite and non-negative");
    }
    if (!finite(c.step_coeff) || c.step_coeff <= 0.0 || c.step_coeff >= 1.0) {
        fail("step_coeff", "must lie strictly between 0 and 1");
    }
    if (!finite(c.trust_reward) || c.trust_reward < 0.0 || c.trust_reward > 1.0) {
        fail("trust_reward", "must lie in [0, 1]");
    }
    if (!finite(c.trust_punishment) || c.trust_punishment > 1.0) {
        fail("trust_punishment", "must be at most 1");
    }
    if (!(c.trust_punishment > c.trust_reward)) {
        fail("trust_punishment", "must exceed trust_reward (leaving is punished harder than staying is rewarded)");
    }
    if (!finite(c.alpha) || c.alpha <= 1.0) fail("alpha", "must be greater than 1");
    if (!finite(c.beta) || c.beta <= 0.0 || c.beta >= 1.0) {
        fail("beta", "must lie strictly between 0 and 1");
    }
    if (c.max_proposals_per_step < 0) fail("max_proposals_per_step", "must be non-negative");
    if (c.max_confirms_per_step < 0) fail("max_confirms_per_step", "must be non-negative");
    if (c.candidate_random_count < 0) fail("candidate_random_count", "must be non-negative");
    if (c.candidate_sent_count < 0) fail("candidate_sent_count", "must be non-negative");
    if (c.candidate_recv_count < 0) fail("candidate_recv_count", "must be non-negative");
    if (c.random_coalition_size_max < 2) {
        fail("random_coalition_size_max", "must be at least 2");
    }
    return out;
}

RiskAttitude assigned_attitude(const SimConfig& config, AgentId agent) {
    switch (config.risk_mix) {
    case RiskMix::AllSeeking: return RiskAttitude::Seeking;
    case RiskMix::AllAverse: return RiskAttitude::Averse;
    case RiskMix::AllNeutral: return RiskAttitude::Neutral;
    case RiskMix::EqualThirds: break;
    }
    static constexpr RiskAttitude cycle[] = {RiskAttitude::Seeking, RiskAttitude::Averse,
                                             RiskAttitude::Neutral};
    const auto n = static_cast<std::size_t>(config.n_agents);
    const std::size_t remainder = n % 3;
    if (agent.value < remainder) return cycle[agent.value];
    return cycle[(agent.value - remainder) % 3];
}

}  // namespace hedonica
