#include "hedonica/profile.hpp"

namespace hedonica {

namespace {

ResponderType draw_responder(const SimConfig& config, Rng& rng) {
    switch (config.responder_mix) {
    case ResponderMix::AllEarly: return ResponderType::Early;
    case ResponderMix::AllLazy: return ResponderType::Lazy;
    case ResponderMix::AllRandom: return ResponderType::Random;
    case ResponderMix::UniformRandom: break;
    }
    static constexpr ResponderType types[] = {ResponderType::Early, ResponderType::Lazy,
                                              ResponderType::Random};
    return types[rng.uniform_index(3)];
}

}  // namespace

std::vector<AgentProfile> make_profiles(const SimConfig& config, Rng& rng) {
    const auto n = static_cast<std::size_t>(config.n_agents);
    std::vector<AgentProfile> profiles(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& p = profiles[i];
        p.honesty = rng.uniform_real(config.honesty_min, config.honesty_max);
        p.risk_attitude = assigned_attitude(config, AgentId{i});
        p.responder_type = draw_responder(config, rng);
        p.interaction = InteractionTable(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                p.interaction.at(AgentId{a}, AgentId{b}) =
                    rng.uniform_real(-kInteractionBound, kInteractionBound);
            }
        }
    }
    return profiles;
}

}  // namespace hedonica
