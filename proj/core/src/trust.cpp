#include "hedonica/trust.hpp"

#include <algorithm>
#include <string>

namespace hedonica {

TrustMatrix init_trust(int n_agents) {
    if (n_agents < 2) {
        throw PreconditionError("trust matrix needs at least 2 agents, got " +
                                std::to_string(n_agents));
    }
    TrustMatrix m;
    m.n_ = static_cast<std::size_t>(n_agents);
    m.values_.assign(m.n_ * m.n_, kInitialTrust);
    for (std::size_t i = 0; i < m.n_; ++i) m.values_[i * m.n_ + i] = 0.0;
    return m;
}

void apply_trust_event(TrustMatrix& matrix, const TrustEvent& event, const SimConfig& config) {
    if (event.observer == event.subject) {
        throw PreconditionError("trust event observer and subject must differ");
    }
    if (event.observer.value >= matrix.size() || event.subject.value >= matrix.size()) {
        throw PreconditionError("trust event references an unknown agent");
    }
    double& v = matrix.ref(event.observer, event.subject);
    if (event.kind == TrustEventKind::Stayed) {
        v = std::min(1.0, v + config.trust_reward);
    } else {
        v = std::max(0.0, v - config.trust_punishment);
    }
}

}  // namespace hedonica
