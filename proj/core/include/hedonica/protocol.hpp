#pragma once

#include <map>
#include <string>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

// Two-phase proposal lifecycle:
//
//   Agreement --all yes--> Commitment --all confirmed, wins arbitration--> Formed
//       |                      |
//       +--any no / timeout----+--any decline / timeout / loses arbitration--> Cancelled
//
// Formed and Cancelled are terminal. Late, duplicate, or post-terminal
// responses are dropped and logged, never treated as errors.

enum class ProposalPhase { Agreement, Commitment, Formed, Cancelled };
enum class AgreementAnswer { Pending, Yes, No };
enum class CommitmentAnswer { Pending, Confirmed, Declined };

enum class RecordOutcome { Recorded, Late, Duplicate, Terminal, WrongPhase, NotSolicited };

std::string to_string(ProposalPhase phase);
std::string to_string(RecordOutcome outcome);

struct AuditEntry {
    Step step = 0;
    ProposalId proposal = 0;
    std::string event;
    std::int64_t actor = -1;
};

using AuditLog = std::vector<AuditEntry>;

class Proposal {
public:
    Proposal(ProposalId id, AgentId initiator, CoalitionSet coalition, Step created_at);

    ProposalId id() const noexcept { return id_; }
    AgentId initiator() const noexcept { return initiator_; }
    const CoalitionSet& coalition() const noexcept { return coalition_; }
    Step created_at() const noexcept { return created_at_; }
    /// Step at which the last agreement arrived; -1 before that.
    Step commitment_started_at() const noexcept { return commitment_started_at_; }
    ProposalPhase phase() const noexcept { return phase_; }
    bool terminal() const noexcept {
        return phase_ == ProposalPhase::Formed || phase_ == ProposalPhase::Cancelled;
    }

    const std::map<AgentId, AgreementAnswer>& agreement() const noexcept { return agreement_; }
    const std::map<AgentId, CommitmentAnswer>& commitment() const noexcept { return commitment_; }

    bool is_solicited(AgentId agent) const { return agreement_.contains(agent); }
    bool all_agreed() const;
    bool all_confirmed() const;
    /// Commitment phase with every solicited agent confirmed.
    bool formation_eligible() const { return phase_ == ProposalPhase::Commitment && all_confirmed(); }

    RecordOutcome record_agreement(AgentId responder, AgreementAnswer answer, Step step, int deadline,
                                   AuditLog* audit = nullptr);
    RecordOutcome record_commitment(AgentId responder, CommitmentAnswer answer, Step step,
                                    int deadline, AuditLog* audit = nullptr);

    /// Cancels if a phase deadline has passed with answers still pending.
    bool expire(Step current_step, const SimConfig& config, AuditLog* audit = nullptr);

    void mark_formed(Step step, AuditLog* audit = nullptr);
    void cancel(Step step, const std::string& reason, AuditLog* audit = nullptr);

private:
    void log(AuditLog* audit, Step step, std::string event, std::int64_t actor) const;

    ProposalId id_;
    AgentId initiator_;
    CoalitionSet coalition_;
    Step created_at_;
    Step commitment_started_at_ = -1;
    ProposalPhase phase_ = ProposalPhase::Agreement;
    std::map<AgentId, AgreementAnswer> agreement_;
    std::map<AgentId, CommitmentAnswer> commitment_;
};

/// Monotonic proposal id counter owned by a run.
class ProposalIdSource {
public:
    ProposalId next() noexcept { return next_++; }

private:
    ProposalId next_ = 0;
};

/// New proposal in the Agreement phase with every solicited answer pending.
Proposal open_proposal(ProposalIdSource& ids, AgentId initiator, const CoalitionSet& coalition,
                       Step step);

/// Applies deadlines to every open proposal; returns the ids it cancelled.
std::vector<ProposalId> expire_proposals(std::vector<Proposal>& proposals, Step current_step,
                                         const SimConfig& config, AuditLog* audit = nullptr);

}  // namespace hedonica
