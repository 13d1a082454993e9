#include "hedonica/trace.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hedonica/ledger.hpp"

namespace hedonica {

void write_trace(std::ostream& out, const TraceHeader& header, std::span<const TraceEvent> events) {
    out << "# hedonica-trace v1\n";
    out << fmt::format("# n_agents={} trust_reward={} trust_punishment={} seed={}\n", header.n_agents,
                       header.trust_reward, header.trust_punishment, header.seed);
    out << "step,kind,actor,object,amount\n";
    for (const auto& e : events) {
        out << fmt::format("{},{},{},{},{}\n", e.step, e.kind, e.actor, e.object, e.amount);
    }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

bool parse_members(const std::string& text, std::set<std::int64_t>& members) {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        std::int64_t v = 0;
        if (!parse_number(tok, v)) return false;
        members.insert(v);
    }
    return !members.empty();
}

struct LiveCoalition {
    std::int64_t initiator = -1;
    std::set<std::int64_t> members;
};

struct OpenedProposal {
    std::int64_t initiator = -1;
    std::set<std::int64_t> members;
    std::set<std::int64_t> agreed;
    std::set<std::int64_t> confirmed;
    bool cancelled = false;
    bool formed = false;
};

class Replayer {
public:
    ReplayReport run(std::istream& in) {
        std::string line;
        bool header_seen = false;
        while (std::getline(in, line)) {
            ++line_no_;
            if (line.empty()) continue;
            if (line.starts_with("# n_agents=")) {
                if (!parse_header(line)) return fail("malformed trace header");
                continue;
            }
            if (line[0] == '#') continue;
            if (!header_seen) {
                if (line != "step,kind,actor,object,amount") return fail("missing column header");
                header_seen = true;
                continue;
            }
            if (n_ == 0) return fail("trace header with n_agents is missing");
            if (!handle(line)) return report_;
        }
        if (!header_seen) return fail("empty or truncated trace");
        if (step_) finish_step();
        return report_;
    }

private:
    bool parse_header(const std::string& line) {
        std::istringstream is(line.substr(2));
        std::string kv;
        while (is >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) return false;
            auto key = kv.substr(0, eq);
            auto val = std::string_view(kv).substr(eq + 1);
            if (key == "n_agents") {
                if (!parse_number(val, n_) || n_ < 2) return false;
            } else if (key == "trust_reward") {
                if (!parse_number(val, reward_)) return false;
            } else if (key == "trust_punishment") {
                if (!parse_number(val, punishment_)) return false;
            }
        }
        const auto n = static_cast<std::size_t>(n_);
        trust_.assign(n * n, 0.5);
        balances_.assign(n, 0.0);
        member_of_.assign(n, -1);
        return n_ > 0;
    }

    ReplayReport fail(std::string message) {
        report_.consistent = false;
        report_.step = step_;
        report_.line = line_no_;
        report_.message = std::move(message);
        return report_;
    }

    bool diverge(std::string message) {
        fail(std::move(message));
        return false;
    }

    bool agent_ok(std::int64_t a) const { return a >= 0 && a < n_; }

    double& trust(std::int64_t obs, std::int64_t subj) {
        return trust_[static_cast<std::size_t>(obs * n_ + subj)];
    }

    bool handle(const std::string& line) {
        auto f = split(line, ',');
        if (f.size() != 5) return diverge("expected 5 fields: " + line);
        Step step = 0;
        std::int64_t actor = 0;
        double amount = 0.0;
        if (!parse_number(f[0], step) || !parse_number(f[2], actor) || !parse_number(f[4], amount)) {
            return diverge("unparseable event: " + line);
        }
        if (step_ && step < *step_) return diverge("steps go backwards");
        if (step_ && step != *step_) {
            if (!finish_step()) return false;
        }
        if (!step_ || step != *step_) start_step(step);

        const std::string& kind = f[1];
        const std::string& object = f[3];
        if (kind.starts_with("ledger.")) return on_ledger(kind.substr(7), actor, amount);
        if (kind == "balance") return on_balance(actor, amount);
        if (kind == "open") return on_open(actor, object);
        if (kind == "agree") return on_agree(actor, object, amount);
        if (kind == "confirm") return on_confirm(actor, object);
        if (kind == "cancel") return on_cancel(object);
        if (kind == "depart") return on_depart(actor, object);
        if (kind == "dissolve") return on_dissolve(actor, object);
        if (kind == "form") return on_form(actor, object);
        if (kind == "handover") return on_handover(actor, object);
        if (kind == "trust_stay" || kind == "trust_left") {
            return on_trust(kind == "trust_stay", actor, object, amount);
        }
        if (kind == "coalition") return on_snapshot(actor, object);
        return diverge("unknown event kind '" + kind + "'");
    }

    void start_step(Step step) {
        step_ = step;
        witnessed_left_.clear();
        leaver_stays_.clear();
        snapshot_.clear();
        step_entries_.clear();
    }

    bool finish_step() {
        for (const auto& problem : check_ledger_conservation(step_entries_)) {
            return diverge("ledger does not balance: " + problem);
        }
        std::map<std::int64_t, std::string> live;
        for (const auto& [cid, c] : coalitions_) live[cid] = describe(c);
        if (live != snapshot_) {
            for (const auto& [cid, text] : live) {
                auto it = snapshot_.find(cid);
                if (it == snapshot_.end()) {
                    return diverge("coalition " + std::to_string(cid) + " missing from snapshot");
                }
                if (it->second != text) {
                    return diverge("coalition " + std::to_string(cid) + " snapshot '" + it->second +
                                   "' but replay has '" + text + "'");
                }
            }
            return diverge("snapshot lists a coalition the replay does not have");
        }
        return true;
    }

    static std::string describe(const LiveCoalition& c) {
        std::string s = std::to_string(c.initiator) + ":";
        bool first = true;
        for (auto m : c.members) {
            if (!first) s += ' ';
            s += std::to_string(m);
            first = false;
        }
        return s;
    }

    bool on_ledger(const std::string& kind_text, std::int64_t actor, double amount) {
        auto kind = parse_ledger_kind(kind_text);
        if (!kind) return diverge("unknown ledger kind '" + kind_text + "'");
        if (!agent_ok(actor)) return diverge("ledger entry for unknown agent");
        LedgerEntry e{*step_, *kind, AgentId{static_cast<std::size_t>(actor)}, amount};
        step_entries_.push_back(e);
        if (*kind != LedgerKind::FeeSink) balances_[static_cast<std::size_t>(actor)] += amount;
        return true;
    }

    bool on_balance(std::int64_t actor, double amount) {
        if (!agent_ok(actor)) return diverge("balance for unknown agent");
        const double replayed = balances_[static_cast<std::size_t>(actor)];
        if (replayed != amount) {
            return diverge(fmt::format("agent {} balance recorded {} but ledger sums to {}", actor,
                                       amount, replayed));
        }
        return true;
    }

    bool on_open(std::int64_t actor, const std::string& object) {
        auto colon = object.find(':');
        std::int64_t pid = 0;
        OpenedProposal p;
        p.initiator = actor;
        if (colon == std::string::npos || !parse_number(std::string_view(object).substr(0, colon), pid) ||
            !parse_members(object.substr(colon + 1), p.members)) {
            return diverge("malformed open event");
        }
        if (!p.members.contains(actor) || p.members.size() < 2) {
            return diverge("proposal " + std::to_string(pid) + " is not a valid coalition for its initiator");
        }
        if (!proposals_.emplace(pid, std::move(p)).second) {
            return diverge("proposal id " + std::to_string(pid) + " opened twice");
        }
        return true;
    }

    OpenedProposal* find_proposal(const std::string& object) {
        std::int64_t pid = 0;
        if (!parse_number(object, pid)) return nullptr;
        auto it = proposals_.find(pid);
        return it == proposals_.end() ? nullptr : &it->second;
    }

    bool on_agree(std::int64_t actor, const std::string& object, double amount) {
        auto* p = find_proposal(object);
        if (!p) return diverge("agreement for unknown proposal " + object);
        if (p->cancelled || p->formed) return diverge("agreement recorded after proposal " + object + " ended");
        if (actor == p->initiator || !p->members.contains(actor)) {
            return diverge("agent " + std::to_string(actor) + " was not solicited by proposal " + object);
        }
        if (amount == 1.0) p->agreed.insert(actor);
        return true;
    }

    bool on_confirm(std::int64_t actor, const std::string& object) {
        auto* p = find_proposal(object);
        if (!p) return diverge("confirmation for unknown proposal " + object);
        if (p->cancelled || p->formed) return diverge("confirmation recorded after proposal " + object + " ended");
        if (!p->agreed.contains(actor)) {
            return diverge("agent " + std::to_string(actor) + " confirmed proposal " + object +
                           " without agreeing first");
        }
        p->confirmed.insert(actor);
        return true;
    }

    bool on_cancel(const std::string& object) {
        auto* p = find_proposal(object);
        if (!p) return diverge("cancel for unknown proposal " + object);
        if (p->formed || p->cancelled) return diverge("proposal " + object + " cancelled after it ended");
        p->cancelled = true;
        return true;
    }

    bool on_depart(std::int64_t actor, const std::string& object) {
        std::int64_t cid = 0;
        if (!agent_ok(actor) || !parse_number(object, cid)) return diverge("malformed depart event");
        auto it = coalitions_.find(cid);
        if (it == coalitions_.end() || !it->second.members.contains(actor)) {
            return diverge("agent " + std::to_string(actor) + " departs coalition " + object +
                           " it is not in");
        }
        it->second.members.erase(actor);
        member_of_[static_cast<std::size_t>(actor)] = -1;
        for (auto m : it->second.members) {
            witnessed_left_.insert({m, actor});
            leaver_stays_.insert({actor, m});
        }
        return true;
    }

    bool on_dissolve(std::int64_t actor, const std::string& object) {
        std::int64_t cid = 0;
        if (!parse_number(object, cid)) return diverge("malformed dissolve event");
        auto it = coalitions_.find(cid);
        if (it == coalitions_.end() || it->second.members.size() != 1 ||
            !it->second.members.contains(actor)) {
            return diverge("coalition " + object + " dissolved while not down to its last member");
        }
        member_of_[static_cast<std::size_t>(actor)] = -1;
        coalitions_.erase(it);
        return true;
    }

    bool on_handover(std::int64_t actor, const std::string& object) {
        std::int64_t cid = 0;
        if (!parse_number(object, cid)) return diverge("malformed handover event");
        auto it = coalitions_.find(cid);
        if (it == coalitions_.end() || !it->second.members.contains(actor) ||
            it->second.members.contains(it->second.initiator)) {
            return diverge("coalition " + object + " handed over while its initiator is still a member");
        }
        it->second.initiator = actor;
        return true;
    }

    bool on_form(std::int64_t actor, const std::string& object) {
        auto parts = split(object, ':');
        std::int64_t cid = 0;
        std::int64_t pid = 0;
        std::set<std::int64_t> members;
        if (parts.size() != 3 || !parse_number(parts[0], cid) || !parse_number(parts[1], pid) ||
            !parse_members(parts[2], members)) {
            return diverge("malformed form event");
        }
        auto pit = proposals_.find(pid);
        if (pit == proposals_.end()) return diverge("coalition formed from unknown proposal");
        auto& p = pit->second;
        if (p.cancelled || p.formed) return diverge("proposal " + parts[1] + " formed after it ended");
        if (p.members != members || p.initiator != actor) {
            return diverge("coalition " + parts[0] + " differs from proposal " + parts[1]);
        }
        for (auto m : members) {
            if (m == actor) continue;
            if (!p.agreed.contains(m) || !p.confirmed.contains(m)) {
                return diverge("proposal " + parts[1] + " formed without consent of agent " +
                               std::to_string(m));
            }
        }
        for (auto m : members) {
            if (!agent_ok(m)) return diverge("coalition member out of range");
            if (member_of_[static_cast<std::size_t>(m)] != -1) {
                return diverge("agent " + std::to_string(m) + " would belong to two coalitions");
            }
        }
        if (coalitions_.contains(cid)) return diverge("coalition id " + parts[0] + " reused");
        p.formed = true;
        for (auto m : members) member_of_[static_cast<std::size_t>(m)] = cid;
        coalitions_[cid] = {actor, std::move(members)};
        return true;
    }

    bool on_trust(bool stayed, std::int64_t observer, const std::string& object, double amount) {
        std::int64_t subject = 0;
        if (!agent_ok(observer) || !parse_number(object, subject) || !agent_ok(subject) ||
            observer == subject) {
            return diverge("malformed trust event");
        }
        double& v = trust(observer, subject);
        if (stayed) {
            const bool co_members = member_of_[static_cast<std::size_t>(observer)] != -1 &&
                                    member_of_[static_cast<std::size_t>(observer)] ==
                                        member_of_[static_cast<std::size_t>(subject)];
            if (!co_members && !leaver_stays_.contains({observer, subject})) {
                return diverge(fmt::format("agent {} rewarded trust in {} without sharing a coalition",
                                           observer, subject));
            }
            v = std::min(1.0, v + reward_);
        } else {
            if (!witnessed_left_.contains({observer, subject})) {
                return diverge(fmt::format("agent {} punished {} for a departure it did not witness",
                                           observer, subject));
            }
            v = std::max(0.0, v - punishment_);
        }
        if (v != amount) {
            return diverge(fmt::format("trust {}->{} recorded {} but replay gives {}", observer,
                                       subject, amount, v));
        }
        return true;
    }

    bool on_snapshot(std::int64_t cid, const std::string& object) {
        if (!snapshot_.emplace(cid, object).second) {
            return diverge("coalition " + std::to_string(cid) + " listed twice in snapshot");
        }
        return true;
    }

    ReplayReport report_;
    std::size_t line_no_ = 0;
    std::optional<Step> step_;

    std::int64_t n_ = 0;
    double reward_ = 0.0;
    double punishment_ = 0.0;

    std::vector<double> trust_;
    std::vector<double> balances_;
    std::vector<std::int64_t> member_of_;
    std::map<std::int64_t, LiveCoalition> coalitions_;
    std::map<std::int64_t, OpenedProposal> proposals_;

    std::set<std::pair<std::int64_t, std::int64_t>> witnessed_left_;
    std::set<std::pair<std::int64_t, std::int64_t>> leaver_stays_;
    std::map<std::int64_t, std::string> snapshot_;
    std::vector<LedgerEntry> step_entries_;
};

}  // namespace

ReplayReport replay_check(std::istream& in) { return Replayer{}.run(in); }

}  // namespace hedonica
