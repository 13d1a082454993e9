#pragma once

#include <cstddef>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

inline constexpr double kInitialTrust = 0.5;

struct TrustEvent;

/// tr[i][j]: agent i's estimate of the probability that agent j stays in
/// their shared coalition for the next step. The diagonal is unused.
class TrustMatrix {
public:
    TrustMatrix() = default;

    std::size_t size() const noexcept { return n_; }
    double at(AgentId observer, AgentId subject) const {
        return values_[observer.value * n_ + subject.value];
    }

private:
    friend TrustMatrix init_trust(int n_agents);
    friend void apply_trust_event(TrustMatrix&, const TrustEvent&, const SimConfig&);

    double& ref(AgentId observer, AgentId subject) {
        return values_[observer.value * n_ + subject.value];
    }

    std::size_t n_ = 0;
    std::vector<double> values_;
};

enum class TrustEventKind { Stayed, Left };

struct TrustEvent {
    AgentId observer;
    AgentId subject;
    TrustEventKind kind = TrustEventKind::Stayed;
    Step step = 0;
};

/// All off-diagonal entries start at 0.5.
TrustMatrix init_trust(int n_agents);

/// Stayed adds trust_reward (capped at 1); Left subtracts trust_punishment
/// (floored at 0). Only tr[observer][subject] changes.
void apply_trust_event(TrustMatrix& matrix, const TrustEvent& event, const SimConfig& config);

}  // namespace hedonica
