#pragma once

#include <cstddef>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/profile.hpp"
#include "hedonica/rng.hpp"
#include "hedonica/types.hpp"

namespace hedonica::fixtures {

inline AgentProfile blank_profile(std::size_t n, RiskAttitude attitude = RiskAttitude::Neutral) {
    AgentProfile p;
    p.risk_attitude = attitude;
    p.interaction = InteractionTable(n);
    return p;
}

inline AgentProfile random_profile(std::size_t n, Rng& rng) {
    AgentProfile p = blank_profile(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            p.interaction.at(AgentId{a}, AgentId{b}) = rng.uniform_real(-kInteractionBound, kInteractionBound);
        }
    }
    return p;
}

/// Random coalition over [0, n) with size in [lo, hi].
inline CoalitionSet random_coalition(std::size_t n, std::size_t lo, std::size_t hi, Rng& rng) {
    const auto size = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
    std::vector<AgentId> members;
    for (auto idx : rng.sample_indices(n, size)) members.push_back(AgentId{idx});
    return CoalitionSet(std::move(members));
}

inline SimConfig small_config(int n_agents = 6, int n_steps = 30) {
    SimConfig c;
    c.n_agents = n_agents;
    c.n_steps = n_steps;
    c.n_runs = 2;
    return c;
}

}  // namespace hedonica::fixtures
