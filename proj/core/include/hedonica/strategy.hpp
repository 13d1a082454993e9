#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/profile.hpp"
#include "hedonica/rng.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

enum class RecordDirection { Received, SentAccepted, SentRefused };

/// One remembered proposal. Received: `counterpart` proposed `coalition` to
/// us. SentAccepted / SentRefused: we proposed `coalition` and `counterpart`
/// answered yes / no.
struct ProposalRecord {
    CoalitionSet coalition;
    AgentId counterpart;
    RecordDirection direction = RecordDirection::Received;
    Step step = 0;
};

/// Everything one agent remembers about proposals it sent and received.
/// Records are indexed by counterpart so interest estimates only scan the
/// relevant agent's records.
class ProposalHistory {
public:
    ProposalHistory() = default;
    explicit ProposalHistory(std::size_t n_agents) : by_counterpart_(n_agents) {}

    void record_received(const CoalitionSet& coalition, AgentId from, Step step);
    void record_sent(const CoalitionSet& coalition, Step step);
    void record_response(const CoalitionSet& coalition, AgentId responder, bool accepted, Step step);

    std::span<const ProposalRecord> records_with(AgentId counterpart) const {
        return by_counterpart_.at(counterpart.value);
    }
    /// Our own proposals, one entry per proposal sent.
    const std::vector<CoalitionSet>& sent() const noexcept { return sent_; }
    /// Proposals received, one Received record per proposal.
    const std::vector<ProposalRecord>& received() const noexcept { return received_; }

private:
    std::vector<std::vector<ProposalRecord>> by_counterpart_;
    std::vector<CoalitionSet> sent_;
    std::vector<ProposalRecord> received_;
};

/// Agreement-phase answer: yes unless the coalition is worth less to the
/// agent than being alone (utility 0).
bool should_accept(AgentId agent, const CoalitionSet& proposed, const AgentProfile& profile);

/// Step at which an agent of the given type answers a proposal that arrived
/// at `arrival_step`. Lazy agents answer on the last step the deadline still
/// allows; random agents pick a uniform step inside the window.
Step response_step(ResponderType type, Step arrival_step, int deadline, Rng& rng);

/// Leave criterion: eu_current * (1 + honesty) < eu_proposed * (1 - brc).
bool should_switch(UtilityValue eu_current, UtilityValue eu_proposed, double honesty, double brc);

/// |c1 xor c2| / n, in [0, 1].
double coalition_distance(const CoalitionSet& c1, const CoalitionSet& c2, int n_agents);

/// min(d_rcv, d_acc) - d_ref for `target`, each term being the distance to
/// the closest record of that kind with `target` (1.0 when there is none).
/// Records whose counterpart is not `target` are ignored.
double interest_degree(std::span<const ProposalRecord> records, AgentId target,
                       const CoalitionSet& candidate, int n_agents);

/// (1 - max delta) / 2: the most unwilling solicited agent decides.
double formation_probability(std::span<const double> deltas);

/// Risk-attitude preference operator. Requires utility > 0.
double preference_score(UtilityValue utility, double p_formation, RiskAttitude attitude,
                        double alpha, double beta);

/// Candidate pool for one initiator: random coalitions containing it, plus
/// samples of its sent and received history. De-duplicated; every entry
/// contains the initiator and has at least two members.
std::vector<CoalitionSet> generate_candidates(AgentId initiator, const ProposalHistory& history,
                                              const SimConfig& config, Rng& rng);

/// What select_proposals needs to know about the initiator's situation.
struct InitiatorContext {
    const AgentProfile& profile;
    const ProposalHistory& history;
    std::optional<CoalitionSet> current;  // nullopt when alone
    UtilityValue eu_current = 0.0;
    bool would_pay_leave_penalty = false;
};

struct ScoredCandidate {
    CoalitionSet coalition;
    UtilityValue utility = 0.0;
    double p_formation = 0.0;
    double score = 0.0;
};

/// Filters and orders candidates best-first. Dropped: non-positive utility
/// for the initiator, the initiator's current coalition, and coalitions the
/// initiator itself would not leave its current one for. Ties are broken by
/// member ids.
std::vector<ScoredCandidate> rank_candidates(AgentId initiator,
                                             std::span<const CoalitionSet> candidates,
                                             const InitiatorContext& context,
                                             const SimConfig& config);

/// Top max_proposals_per_step of rank_candidates, minus any whose
/// utility * p_formation falls below 2 * comm_cost.
std::vector<ScoredCandidate> select_proposals(AgentId initiator,
                                              std::span<const CoalitionSet> candidates,
                                              const InitiatorContext& context,
                                              const SimConfig& config);

}  // namespace hedonica
