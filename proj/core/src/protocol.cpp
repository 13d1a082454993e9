#include "hedonica/protocol.hpp"

#include <algorithm>

namespace hedonica {

std::string to_string(ProposalPhase phase) {
    switch (phase) {
    case ProposalPhase::Agreement: return "agreement";
    case ProposalPhase::Commitment: return "commitment";
    case ProposalPhase::Formed: return "formed";
    case ProposalPhase::Cancelled: return "cancelled";
    }
    return "unknown";
}

std::string to_string(RecordOutcome outcome) {
    switch (outcome) {
    case RecordOutcome::Recorded: return "recorded";
    case RecordOutcome::Late: return "late";
    case RecordOutcome::Duplicate: return "duplicate";
    case RecordOutcome::Terminal: return "terminal";
    case RecordOutcome::WrongPhase: return "wrong-phase";
    case RecordOutcome::NotSolicited: return "not-solicited";
    }
    return "unknown";
}

Proposal::Proposal(ProposalId id, AgentId initiator, CoalitionSet coalition, Step created_at)
    : id_(id), initiator_(initiator), coalition_(std::move(coalition)), created_at_(created_at) {
    if (!coalition_.contains(initiator_)) {
        throw PreconditionError("proposal coalition {" + coalition_.to_string() +
                                "} does not contain its initiator " +
                                std::to_string(initiator_.value));
    }
    if (coalition_.size() < 2) {
        throw PreconditionError("proposal needs at least one solicited agent");
    }
    for (auto m : coalition_.members()) {
        if (m == initiator_) continue;
        agreement_.emplace(m, AgreementAnswer::Pending);
        commitment_.emplace(m, CommitmentAnswer::Pending);
    }
}

bool Proposal::all_agreed() const {
    return std::all_of(agreement_.begin(), agreement_.end(),
                       [](const auto& kv) { return kv.second == AgreementAnswer::Yes; });
}

bool Proposal::all_confirmed() const {
    return std::all_of(commitment_.begin(), commitment_.end(),
                       [](const auto& kv) { return kv.second == CommitmentAnswer::Confirmed; });
}

void Proposal::log(AuditLog* audit, Step step, std::string event, std::int64_t actor) const {
    if (audit) audit->push_back({step, id_, std::move(event), actor});
}

RecordOutcome Proposal::record_agreement(AgentId responder, AgreementAnswer answer, Step step,
                                         int deadline, AuditLog* audit) {
    const auto actor = static_cast<std::int64_t>(responder.value);
    auto reject = [&](RecordOutcome why) {
        log(audit, step, "ignored-agreement:" + to_string(why), actor);
        return why;
    };
    if (terminal()) return reject(RecordOutcome::Terminal);
    if (phase_ != ProposalPhase::Agreement) return reject(RecordOutcome::WrongPhase);
    auto it = agreement_.find(responder);
    if (it == agreement_.end()) return reject(RecordOutcome::NotSolicited);
    if (it->second != AgreementAnswer::Pending) return reject(RecordOutcome::Duplicate);
    if (answer == AgreementAnswer::Pending) {
        throw PreconditionError("an agreement answer must be yes or no");
    }
    if (step > created_at_ + deadline - 1) return reject(RecordOutcome::Late);

    it->second = answer;
    log(audit, step, answer == AgreementAnswer::Yes ? "agree-yes" : "agree-no", actor);
    if (answer == AgreementAnswer::No) {
        phase_ = ProposalPhase::Cancelled;
        log(audit, step, "cancelled:refused", actor);
    } else if (all_agreed()) {
        phase_ = ProposalPhase::Commitment;
        commitment_started_at_ = step;
        log(audit, step, "commitment-requested", static_cast<std::int64_t>(initiator_.value));
    }
    return RecordOutcome::Recorded;
}

RecordOutcome Proposal::record_commitment(AgentId responder, CommitmentAnswer answer, Step step,
                                          int deadline, AuditLog* audit) {
    const auto actor = static_cast<std::int64_t>(responder.value);
    auto reject = [&](RecordOutcome why) {
        log(audit, step, "ignored-commitment:" + to_string(why), actor);
        return why;
    };
    if (terminal()) return reject(RecordOutcome::Terminal);
    if (phase_ != ProposalPhase::Commitment) return reject(RecordOutcome::WrongPhase);
    auto it = commitment_.find(responder);
    if (it == commitment_.end()) return reject(RecordOutcome::NotSolicited);
    if (it->second != CommitmentAnswer::Pending) return reject(RecordOutcome::Duplicate);
    if (answer == CommitmentAnswer::Pending) {
        throw PreconditionError("a commitment answer must be confirmed or declined");
    }
    if (step > commitment_started_at_ + deadline - 1) return reject(RecordOutcome::Late);

    it->second = answer;
    log(audit, step, answer == CommitmentAnswer::Confirmed ? "confirm" : "decline", actor);
    if (answer == CommitmentAnswer::Declined) {
        phase_ = ProposalPhase::Cancelled;
        log(audit, step, "cancelled:declined", actor);
    }
    return RecordOutcome::Recorded;
}

bool Proposal::expire(Step current_step, const SimConfig& config, AuditLog* audit) {
    if (phase_ == ProposalPhase::Agreement && current_step - created_at_ >= config.response_deadline) {
        phase_ = ProposalPhase::Cancelled;
        log(audit, current_step, "cancelled:agreement-timeout", -1);
        return true;
    }
    if (phase_ == ProposalPhase::Commitment && !all_confirmed() &&
        current_step - commitment_started_at_ >= config.confirm_deadline) {
        phase_ = ProposalPhase::Cancelled;
        log(audit, current_step, "cancelled:commitment-timeout", -1);
        return true;
    }
    return false;
}

void Proposal::mark_formed(Step step, AuditLog* audit) {
    if (!formation_eligible()) {
        throw PreconditionError("proposal " + std::to_string(id_) +
                                " cannot form: not every solicited agent agreed and confirmed");
    }
    phase_ = ProposalPhase::Formed;
    log(audit, step, "formed", static_cast<std::int64_t>(initiator_.value));
}

void Proposal::cancel(Step step, const std::string& reason, AuditLog* audit) {
    if (terminal()) throw PreconditionError("proposal " + std::to_string(id_) + " is already terminal");
    phase_ = ProposalPhase::Cancelled;
    log(audit, step, "cancelled:" + reason, -1);
}

Proposal open_proposal(ProposalIdSource& ids, AgentId initiator, const CoalitionSet& coalition,
                       Step step) {
    if (!coalition.contains(initiator)) {
        throw PreconditionError("proposal coalition does not contain its initiator");
    }
    if (coalition.size() < 2) throw PreconditionError("proposal needs at least one solicited agent");
    return Proposal(ids.next(), initiator, coalition, step);
}

std::vector<ProposalId> expire_proposals(std::vector<Proposal>& proposals, Step current_step,
                                         const SimConfig& config, AuditLog* audit) {
    std::vector<ProposalId> cancelled;
    for (auto& p : proposals) {
        if (!p.terminal() && p.expire(current_step, config, audit)) cancelled.push_back(p.id());
    }
    return cancelled;
}

}  // namespace hedonica
