#pragma once

#include "hedonica/config.hpp"
#include "hedonica/profile.hpp"
#include "hedonica/trust.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

/// Sum of est_agent[a][b] over ordered pairs of distinct members, summed in
/// ascending (a, b) order. A singleton coalition is worth 0.
UtilityValue coalition_utility(AgentId agent, const CoalitionSet& coalition,
                               const AgentProfile& profile);

/// `utility` discounted by the agent's trust in each co-member staying.
UtilityValue expected_utility_current(AgentId agent, const CoalitionSet& coalition,
                                      UtilityValue utility, const TrustMatrix& trust);

/// Solicited agents pay the enrollment fee on joining; initiators do not.
enum class JoinRole { Solicited, Initiator };

/// proposed_utility - (penalty + enrollment) * step_coeff, where the penalty
/// is charged only if the agent would be leaving a coalition younger than the
/// obligatory stay.
UtilityValue expected_utility_proposed(UtilityValue proposed_utility, bool would_pay_leave_penalty,
                                       const SimConfig& config,
                                       JoinRole role = JoinRole::Solicited);

}  // namespace hedonica
