#pragma once

#include <cstddef>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/rng.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

/// An agent's private n x n estimate of pairwise interaction, est[a][b].
/// Rows and columns include the owner itself.
class InteractionTable {
public:
    InteractionTable() = default;
    explicit InteractionTable(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }

    double at(AgentId a, AgentId b) const { return values_[a.value * n_ + b.value]; }
    double& at(AgentId a, AgentId b) { return values_[a.value * n_ + b.value]; }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

struct AgentProfile {
    double honesty = 0.0;
    RiskAttitude risk_attitude = RiskAttitude::Neutral;
    ResponderType responder_type = ResponderType::Early;
    InteractionTable interaction;
};

inline constexpr double kInteractionBound = 100.0;

/// Draws every agent's profile from `rng`: honesty uniform in the configured
/// range, table entries uniform in [-100, 100], attitudes and responder
/// types per the configured mixes. Draw order is agent by agent, so a given
/// seed always yields the same population.
std::vector<AgentProfile> make_profiles(const SimConfig& config, Rng& rng);

}  // namespace hedonica
