#include "hedonica/types.hpp"

#include <algorithm>

namespace hedonica {

std::string to_string(RiskAttitude attitude) {
    switch (attitude) {
    case RiskAttitude::Seeking: return "seeking";
    case RiskAttitude::Averse: return "averse";
    case RiskAttitude::Neutral: return "neutral";
    }
    return "unknown";
}

std::string to_string(ResponderType type) {
    switch (type) {
    case ResponderType::Early: return "early";
    case ResponderType::Lazy: return "lazy";
    case ResponderType::Random: return "random";
    }
    return "unknown";
}

CoalitionSet::CoalitionSet(std::vector<AgentId> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw PreconditionError("coalition must be non-empty");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

CoalitionSet::CoalitionSet(std::initializer_list<std::size_t> ids)
    : CoalitionSet([&] {
          std::vector<AgentId> v;
          v.reserve(ids.size());
          for (auto id : ids) v.push_back(AgentId{id});
          return v;
      }()) {}

bool CoalitionSet::contains(AgentId agent) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), agent);
}

std::vector<AgentId> CoalitionSet::others(AgentId agent) const {
    std::vector<AgentId> out;
    out.reserve(members_.size());
    for (auto m : members_) {
        if (m != agent) out.push_back(m);
    }
    return out;
}

void CoalitionSet::insert(AgentId agent) {
    auto it = std::lower_bound(members_.begin(), members_.end(), agent);
    if (it == members_.end() || *it != agent) members_.insert(it, agent);
}

void CoalitionSet::erase(AgentId agent) {
    auto it = std::lower_bound(members_.begin(), members_.end(), agent);
    if (it == members_.end() || *it != agent) return;
    if (members_.size() == 1) {
        throw PreconditionError("cannot remove the last member of a coalition");
    }
    members_.erase(it);
}

std::size_t CoalitionSet::symmetric_difference_size(const CoalitionSet& other) const noexcept {
    std::size_t i = 0, j = 0, diff = 0;
    const auto& a = members_;
    const auto& b = other.members_;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++diff;
            ++i;
        } else {
            ++diff;
            ++j;
        }
    }
    return diff + (a.size() - i) + (b.size() - j);
}

std::string CoalitionSet::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < members_.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(members_[k].value);
    }
    return out;
}

}  // namespace hedonica
