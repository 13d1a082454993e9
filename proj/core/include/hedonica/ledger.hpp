#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hedonica/config.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

// FeeSink holds the part of an enrollment fee the initiator does not
// receive. Its `agent` is the payer; it is not credited to anyone.
enum class LedgerKind {
    UtilityAccrual,
    CommCost,
    EnrollFee,
    InitiatorReward,
    FeeSink,
    LeavePenalty,
    PenaltyShare,
};

std::string to_string(LedgerKind kind);
std::optional<LedgerKind> parse_ledger_kind(std::string_view text);

struct LedgerEntry {
    Step step = 0;
    LedgerKind kind = LedgerKind::UtilityAccrual;
    AgentId agent;
    double amount = 0.0;
};

class Ledger {
public:
    Ledger() = default;
    explicit Ledger(std::size_t n_agents) : balance_(n_agents, 0.0), accrual_(n_agents, 0.0) {}

    void post(const LedgerEntry& entry);

    std::span<const LedgerEntry> entries() const noexcept { return entries_; }
    /// Everything credited to or debited from the agent.
    double balance(AgentId agent) const { return balance_.at(agent.value); }
    /// UtilityAccrual entries only.
    double accrual(AgentId agent) const { return accrual_.at(agent.value); }
    double gained(AgentId agent, GainedUtility mode) const {
        return mode == GainedUtility::LedgerTotal ? balance(agent) : accrual(agent);
    }

private:
    std::vector<LedgerEntry> entries_;
    std::vector<double> balance_;
    std::vector<double> accrual_;
};

/// Per-step money conservation: penalties equal the shares paid out, and
/// each enrollment fee equals its initiator reward plus sink. Returns one
/// message per broken step; empty when the books balance within `tolerance`.
std::vector<std::string> check_ledger_conservation(std::span<const LedgerEntry> entries,
                                                   double tolerance = 1e-9);

}  // namespace hedonica
