#include "hedonica/utility.hpp"

namespace hedonica {

UtilityValue coalition_utility(AgentId agent, const CoalitionSet& coalition,
                               const AgentProfile& profile) {
    if (!coalition.contains(agent)) {
        throw PreconditionError("agent " + std::to_string(agent.value) +
                                " is not a member of {" + coalition.to_string() + "}");
    }
    const auto members = coalition.members();
    UtilityValue sum = 0.0;
    for (auto a : members) {
        for (auto b : members) {
            if (a != b) sum += profile.interaction.at(a, b);
        }
    }
    return sum;
}

UtilityValue expected_utility_current(AgentId agent, const CoalitionSet& coalition,
                                      UtilityValue utility, const TrustMatrix& trust) {
    if (!coalition.contains(agent)) {
        throw PreconditionError("agent " + std::to_string(agent.value) +
                                " is not a member of {" + coalition.to_string() + "}");
    }
    double product = 1.0;
    for (auto j : coalition.members()) {
        if (j != agent) product *= trust.at(agent, j);
    }
    return utility * product;
}

UtilityValue expected_utility_proposed(UtilityValue proposed_utility, bool would_pay_leave_penalty,
                                       const SimConfig& config, JoinRole role) {
    const double penalty = would_pay_leave_penalty ? config.leave_penalty : 0.0;
    const double enroll = role == JoinRole::Solicited ? config.enroll_fee : 0.0;
    return proposed_utility - (penalty + enroll) * config.step_coeff;
}

}  // namespace hedonica
