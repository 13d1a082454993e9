#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hedonica {

/// Raised when a caller breaks a documented precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised by the engine when a structural invariant fails mid-run. This is a
/// bug trap: valid configurations never trigger it.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AgentId {
    std::size_t value = 0;

    constexpr auto operator<=>(const AgentId&) const = default;
};

using Step = std::int64_t;
using CoalitionId = std::int64_t;
using ProposalId = std::int64_t;
using UtilityValue = double;

enum class RiskAttitude { Seeking, Averse, Neutral };
enum class ResponderType { Early, Lazy, Random };

std::string to_string(RiskAttitude attitude);
std::string to_string(ResponderType type);

/// Non-empty set of agents kept sorted by id, so equality and ordering are
/// canonical regardless of construction order.
class CoalitionSet {
public:
    explicit CoalitionSet(std::vector<AgentId> members);
    CoalitionSet(std::initializer_list<std::size_t> ids);

    static CoalitionSet singleton(AgentId agent) { return CoalitionSet({agent}); }

    std::span<const AgentId> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(AgentId agent) const noexcept;

    /// Members other than `agent`, in ascending order.
    std::vector<AgentId> others(AgentId agent) const;

    void insert(AgentId agent);
    void erase(AgentId agent);

    /// Number of agents in exactly one of the two sets.
    std::size_t symmetric_difference_size(const CoalitionSet& other) const noexcept;

    /// Space separated ids, e.g. "0 3 7".
    std::string to_string() const;

    auto operator<=>(const CoalitionSet&) const = default;
    bool operator==(const CoalitionSet&) const = default;

private:
    std::vector<AgentId> members_;
};

/// A formed group of at least two agents. Singletons are represented as
/// "alone" in the world state, never as a Coalition.
struct Coalition {
    CoalitionId id = 0;
    CoalitionSet members;
    AgentId initiator;
    Step formed_at = 0;
};

}  // namespace hedonica
