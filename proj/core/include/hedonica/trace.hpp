#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hedonica/types.hpp"

namespace hedonica {

// Event trace: one CSV line per event, `step,kind,actor,object,amount`.
//
//   open       initiator   "<proposal>:<members>"
//   agree      responder   "<proposal>"                 1 = yes, 0 = no
//   confirm    responder   "<proposal>"
//   cancel     -1          "<proposal>"
//   depart     leaver      "<coalition>"
//   dissolve   last member "<coalition>"
//   handover   new initiator "<coalition>"             after the initiator departs
//   form       initiator   "<coalition>:<proposal>:<members>"
//   ledger.<k> agent       "-"                          signed amount
//   trust_stay observer    "<subject>"                  new trust value
//   trust_left observer    "<subject>"                  new trust value
//   balance    agent       "-"                          cumulative balance after the step
//   coalition  coalition   "<initiator>:<members>"      end-of-step snapshot
//
// Amounts are printed in shortest round-trip form so a replay recomputes
// them bit-for-bit.

struct TraceEvent {
    Step step = 0;
    std::string kind;
    std::int64_t actor = -1;
    std::string object;
    double amount = 0.0;
};

struct TraceHeader {
    int n_agents = 0;
    double trust_reward = 0.0;
    double trust_punishment = 0.0;
    std::uint64_t seed = 0;
};

class TraceRecorder {
public:
    explicit TraceRecorder(bool enabled = false) : enabled_(enabled) {}

    bool enabled() const noexcept { return enabled_; }

    void emit(Step step, std::string kind, std::int64_t actor, std::string object = "-",
              double amount = 0.0) {
        if (enabled_) events_.push_back({step, std::move(kind), actor, std::move(object), amount});
    }

    std::span<const TraceEvent> events() const noexcept { return events_; }
    std::vector<TraceEvent> take() && { return std::move(events_); }

private:
    bool enabled_;
    std::vector<TraceEvent> events_;
};

void write_trace(std::ostream& out, const TraceHeader& header, std::span<const TraceEvent> events);

struct ReplayReport {
    bool consistent = true;
    std::optional<Step> step;  // step of the first divergence
    std::size_t line = 0;      // 1-based line number of the first divergence
    std::string message;
};

/// Re-derives balances, the coalition partition, trust values and proposal
/// consent from the trace alone and compares them with the checkpoints the
/// trace records. Stops at the first divergence.
ReplayReport replay_check(std::istream& in);

}  // namespace hedonica
