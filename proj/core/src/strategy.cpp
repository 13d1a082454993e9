#include "hedonica/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hedonica/utility.hpp"

namespace hedonica {

void ProposalHistory::record_received(const CoalitionSet& coalition, AgentId from, Step step) {
    ProposalRecord rec{coalition, from, RecordDirection::Received, step};
    by_counterpart_.at(from.value).push_back(rec);
    received_.push_back(std::move(rec));
}

void ProposalHistory::record_sent(const CoalitionSet& coalition, Step) {
    sent_.push_back(coalition);
}

void ProposalHistory::record_response(const CoalitionSet& coalition, AgentId responder,
                                      bool accepted, Step step) {
    by_counterpart_.at(responder.value)
        .push_back({coalition, responder,
                    accepted ? RecordDirection::SentAccepted : RecordDirection::SentRefused, step});
}

bool should_accept(AgentId agent, const CoalitionSet& proposed, const AgentProfile& profile) {
    return coalition_utility(agent, proposed, profile) >= 0.0;
}

Step response_step(ResponderType type, Step arrival_step, int deadline, Rng& rng) {
    if (deadline < 1) throw PreconditionError("response deadline must be at least 1 step");
    switch (type) {
    case ResponderType::Early: return arrival_step;
    case ResponderType::Lazy: return arrival_step + deadline - 1;
    case ResponderType::Random:
        return arrival_step + static_cast<Step>(rng.uniform_index(static_cast<std::uint64_t>(deadline)));
    }
    return arrival_step;
}

bool should_switch(UtilityValue eu_current, UtilityValue eu_proposed, double honesty, double brc) {
    if (!(brc >= 0.0 && brc < 1.0)) throw PreconditionError("bad reputation coefficient must lie in [0, 1)");
    return eu_current * (1.0 + honesty) < eu_proposed * (1.0 - brc);
}

double coalition_distance(const CoalitionSet& c1, const CoalitionSet& c2, int n_agents) {
    if (n_agents < 1) throw PreconditionError("n_agents must be positive");
    const auto n = static_cast<std::size_t>(n_agents);
    if (c1.members().back().value >= n || c2.members().back().value >= n) {
        throw PreconditionError("coalition member id out of range");
    }
    return static_cast<double>(c1.symmetric_difference_size(c2)) / static_cast<double>(n);
}

double interest_degree(std::span<const ProposalRecord> records, AgentId target,
                       const CoalitionSet& candidate, int n_agents) {
    if (!candidate.contains(target)) {
        throw PreconditionError("interest target must belong to the candidate coalition");
    }
    double d_rcv = 1.0, d_acc = 1.0, d_ref = 1.0;
    for (const auto& rec : records) {
        if (rec.counterpart != target) continue;
        const double d = coalition_distance(candidate, rec.coalition, n_agents);
        switch (rec.direction) {
        case RecordDirection::Received: d_rcv = std::min(d_rcv, d); break;
        case RecordDirection::SentAccepted: d_acc = std::min(d_acc, d); break;
        case RecordDirection::SentRefused: d_ref = std::min(d_ref, d); break;
        }
    }
    return std::min(d_rcv, d_acc) - d_ref;
}

double formation_probability(std::span<const double> deltas) {
    if (deltas.empty()) throw PreconditionError("formation probability needs at least one solicited agent");
    const double worst = *std::max_element(deltas.begin(), deltas.end());
    return std::clamp((1.0 - worst) / 2.0, 0.0, 1.0);
}

double preference_score(UtilityValue utility, double p_formation, RiskAttitude attitude,
                        double alpha, double beta) {
    if (!(utility > 0.0)) throw PreconditionError("preference score needs positive utility");
    switch (attitude) {
    case RiskAttitude::Seeking: return std::pow(utility, alpha) * p_formation;
    case RiskAttitude::Averse:
        return utility * (p_formation > 0.0 ? std::pow(p_formation, beta) : 0.0);
    case RiskAttitude::Neutral: return utility * p_formation;
    }
    return 0.0;
}

namespace {

// Sampled history coalitions must contain the initiator. If it is missing it
// is added; should that overflow the size cap, the original proposer makes
// room (or the highest id, when the proposer is unknown).
CoalitionSet include_initiator(CoalitionSet coalition, AgentId initiator,
                               std::optional<AgentId> proposer, std::size_t max_size) {
    if (coalition.contains(initiator)) return coalition;
    coalition.insert(initiator);
    if (coalition.size() > max_size) {
        AgentId drop = initiator;
        if (proposer && *proposer != initiator && coalition.contains(*proposer)) {
            drop = *proposer;
        } else {
            for (auto m : coalition.members()) {
                if (m != initiator) drop = m;
            }
        }
        coalition.erase(drop);
    }
    return coalition;
}

}  // namespace

std::vector<CoalitionSet> generate_candidates(AgentId initiator, const ProposalHistory& history,
                                              const SimConfig& config, Rng& rng) {
    const auto n = static_cast<std::size_t>(config.n_agents);
    const auto max_size =
        std::min<std::size_t>(static_cast<std::size_t>(config.random_coalition_size_max), n);
    std::vector<CoalitionSet> out;
    auto push_unique = [&](CoalitionSet c) {
        if (c.size() < 2) return;
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    };

    for (int k = 0; k < config.candidate_random_count; ++k) {
        const auto size = static_cast<std::size_t>(rng.uniform_int(2, static_cast<std::int64_t>(max_size)));
        std::vector<AgentId> members{initiator};
        for (auto idx : rng.sample_indices(n - 1, size - 1)) {
            members.push_back(AgentId{idx < initiator.value ? idx : idx + 1});
        }
        push_unique(CoalitionSet(std::move(members)));
    }

    const auto& sent = history.sent();
    for (auto idx : rng.sample_indices(sent.size(), static_cast<std::size_t>(config.candidate_sent_count))) {
        push_unique(include_initiator(sent[idx], initiator, std::nullopt, max_size));
    }
    const auto& received = history.received();
    for (auto idx : rng.sample_indices(received.size(), static_cast<std::size_t>(config.candidate_recv_count))) {
        push_unique(include_initiator(received[idx].coalition, initiator, received[idx].counterpart, max_size));
    }
    return out;
}

std::vector<ScoredCandidate> rank_candidates(AgentId initiator,
                                             std::span<const CoalitionSet> candidates,
                                             const InitiatorContext& context,
                                             const SimConfig& config) {
    std::vector<ScoredCandidate> scored;
    scored.reserve(candidates.size());
    std::vector<double> deltas;
    for (const auto& c : candidates) {
        if (!c.contains(initiator)) throw PreconditionError("candidate lacks its initiator");
        if (c.size() < 2) continue;
        const UtilityValue u = coalition_utility(initiator, c, context.profile);
        if (!(u > 0.0)) continue;
        if (context.current && *context.current == c) continue;
        const UtilityValue eu_new = expected_utility_proposed(u, context.would_pay_leave_penalty,
                                                              config, JoinRole::Initiator);
        if (!should_switch(context.eu_current, eu_new, context.profile.honesty,
                           config.bad_reputation_coeff)) {
            continue;
        }
        deltas.clear();
        for (auto j : c.members()) {
            if (j == initiator) continue;
            deltas.push_back(interest_degree(context.history.records_with(j), j, c, config.n_agents));
        }
        const double p = formation_probability(deltas);
        const double score =
            preference_score(u, p, context.profile.risk_attitude, config.alpha, config.beta);
        scored.push_back({c, u, p, score});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.coalition < b.coalition;
    });
    return scored;
}

std::vector<ScoredCandidate> select_proposals(AgentId initiator,
                                              std::span<const CoalitionSet> candidates,
                                              const InitiatorContext& context,
                                              const SimConfig& config) {
    auto ranked = rank_candidates(initiator, candidates, context, config);
    const auto keep = static_cast<std::size_t>(std::max(0, config.max_proposals_per_step));
    if (ranked.size() > keep) ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());
    const double gate = 2.0 * config.comm_cost;
    std::erase_if(ranked, [gate](const ScoredCandidate& s) { return s.utility * s.p_formation < gate; });
    return ranked;
}

}  // namespace hedonica
