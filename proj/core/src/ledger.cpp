#include "hedonica/ledger.hpp"

#include <cmath>
#include <map>

namespace hedonica {

namespace {
constexpr LedgerKind kAllKinds[] = {
    LedgerKind::UtilityAccrual, LedgerKind::CommCost,     LedgerKind::EnrollFee,
    LedgerKind::InitiatorReward, LedgerKind::FeeSink,     LedgerKind::LeavePenalty,
    LedgerKind::PenaltyShare,
};
}  // namespace

std::string to_string(LedgerKind kind) {
    switch (kind) {
    case LedgerKind::UtilityAccrual: return "utility_accrual";
    case LedgerKind::CommCost: return "comm_cost";
    case LedgerKind::EnrollFee: return "enroll_fee";
    case LedgerKind::InitiatorReward: return "initiator_reward";
    case LedgerKind::FeeSink: return "fee_sink";
    case LedgerKind::LeavePenalty: return "leave_penalty";
    case LedgerKind::PenaltyShare: return "penalty_share";
    }
    return "unknown";
}

std::optional<LedgerKind> parse_ledger_kind(std::string_view text) {
    for (auto k : kAllKinds) {
        if (text == to_string(k)) return k;
    }
    return std::nullopt;
}

void Ledger::post(const LedgerEntry& entry) {
    entries_.push_back(entry);
    if (entry.kind == LedgerKind::FeeSink) return;
    balance_.at(entry.agent.value) += entry.amount;
    if (entry.kind == LedgerKind::UtilityAccrual) accrual_.at(entry.agent.value) += entry.amount;
}

std::vector<std::string> check_ledger_conservation(std::span<const LedgerEntry> entries,
                                                   double tolerance) {
    struct StepTotals {
        double penalties = 0, shares = 0, fees = 0, rewards = 0, sinks = 0;
        std::size_t fee_count = 0, reward_count = 0, sink_count = 0;
    };
    std::map<Step, StepTotals> by_step;
    for (const auto& e : entries) {
        auto& t = by_step[e.step];
        switch (e.kind) {
        case LedgerKind::LeavePenalty: t.penalties += e.amount; break;
        case LedgerKind::PenaltyShare: t.shares += e.amount; break;
        case LedgerKind::EnrollFee:
            t.fees += e.amount;
            ++t.fee_count;
            break;
        case LedgerKind::InitiatorReward:
            t.rewards += e.amount;
            ++t.reward_count;
            break;
        case LedgerKind::FeeSink:
            t.sinks += e.amount;
            ++t.sink_count;
            break;
        default: break;
        }
    }
    std::vector<std::string> problems;
    for (const auto& [step, t] : by_step) {
        if (std::abs(t.penalties + t.shares) > tolerance) {
            problems.push_back("step " + std::to_string(step) + ": leave penalties " +
                               std::to_string(t.penalties) + " vs shares " + std::to_string(t.shares));
        }
        if (std::abs(t.fees + t.rewards + t.sinks) > tolerance || t.fee_count != t.reward_count ||
            t.fee_count != t.sink_count) {
            problems.push_back("step " + std::to_string(step) + ": enrollment fees " +
                               std::to_string(t.fees) + " vs rewards " + std::to_string(t.rewards) +
                               " + sink " + std::to_string(t.sinks));
        }
    }
    return problems;
}

}  // namespace hedonica
