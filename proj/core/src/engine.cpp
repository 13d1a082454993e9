#include "hedonica/engine.hpp"

#include <algorithm>
#include <set>

#include "hedonica/utility.hpp"

namespace hedonica {

namespace {

std::string describe(const std::vector<ConfigViolation>& violations) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += " " + v.field + " (" + v.message + ");";
    return msg;
}

std::int64_t as_actor(AgentId a) { return static_cast<std::int64_t>(a.value); }

void post(WorldState& s, LedgerKind kind, AgentId agent, double amount) {
    s.ledger.post({s.step, kind, agent, amount});
    s.trace.emit(s.step, "ledger." + to_string(kind), as_actor(agent), "-", amount);
}

AuditLog* audit_of(WorldState& s) { return s.keep_audit ? &s.audit : nullptr; }

void observe(WorldState& s, AgentId observer, AgentId subject, TrustEventKind kind,
             const SimConfig& config) {
    apply_trust_event(s.trust, {observer, subject, kind, s.step}, config);
    s.trace.emit(s.step, kind == TrustEventKind::Stayed ? "trust_stay" : "trust_left",
                 as_actor(observer), std::to_string(subject.value), s.trust.at(observer, subject));
}

Proposal* find_open(WorldState& s, ProposalId id) {
    auto it = std::lower_bound(s.open_proposals.begin(), s.open_proposals.end(), id,
                               [](const Proposal& p, ProposalId v) { return p.id() < v; });
    return it != s.open_proposals.end() && it->id() == id ? &*it : nullptr;
}

void note_cancel(WorldState& s, const Proposal& p) {
    s.trace.emit(s.step, "cancel", -1, std::to_string(p.id()));
    ++s.counters.proposals_cancelled;
}

// Releases every scheduled agreement answer due at the current step, in
// (proposal id, responder id) order.
void deliver_due_agreements(WorldState& s, const SimConfig& config) {
    const Step t = s.step;
    std::vector<ScheduledResponse> keep;
    keep.reserve(s.pending_responses.size());
    for (const auto& r : s.pending_responses) {
        if (r.due != t) {
            keep.push_back(r);
            continue;
        }
        Proposal* p = find_open(s, r.proposal);
        if (!p) {
            ++s.counters.ignored_responses;
            if (s.keep_audit) {
                s.audit.push_back({t, r.proposal, "ignored-agreement:terminal", as_actor(r.responder)});
            }
            continue;
        }
        const auto outcome = p->record_agreement(r.responder, r.answer, t, config.response_deadline,
                                                 audit_of(s));
        if (outcome != RecordOutcome::Recorded) {
            ++s.counters.ignored_responses;
            continue;
        }
        const bool yes = r.answer == AgreementAnswer::Yes;
        s.histories[p->initiator().value].record_response(p->coalition(), r.responder, yes, t);
        s.trace.emit(t, "agree", as_actor(r.responder), std::to_string(p->id()), yes ? 1.0 : 0.0);
        if (p->phase() == ProposalPhase::Cancelled) note_cancel(s, *p);
    }
    s.pending_responses = std::move(keep);
}

UtilityValue current_expected_utility(const WorldState& s, AgentId agent, const Coalition* current) {
    if (!current) return 0.0;
    const auto& profile = s.profiles[agent.value];
    return expected_utility_current(agent, current->members,
                                    coalition_utility(agent, current->members, profile), s.trust);
}

bool within_obligatory_stay(const Coalition* current, Step t, const SimConfig& config) {
    return current && (t - current->formed_at) < config.obligatory_stay;
}

void commitment_round(WorldState& s, const SimConfig& config) {
    const Step t = s.step;
    for (std::size_t i = 0; i < s.n_agents(); ++i) {
        const AgentId agent{i};
        const auto& profile = s.profiles[i];
        const Coalition* current = s.coalition_of(agent);
        int confirmed = 0;
        for (auto& p : s.open_proposals) {
            if (confirmed >= config.max_confirms_per_step) break;
            if (p.phase() != ProposalPhase::Commitment) continue;
            auto it = p.commitment().find(agent);
            if (it == p.commitment().end() || it->second != CommitmentAnswer::Pending) continue;
            if (current && current->members == p.coalition()) continue;

            const UtilityValue eu_new = expected_utility_proposed(
                coalition_utility(agent, p.coalition(), profile),
                within_obligatory_stay(current, t, config), config, JoinRole::Solicited);
            const UtilityValue eu_now = current_expected_utility(s, agent, current);
            if (!should_switch(eu_now, eu_new, profile.honesty, config.bad_reputation_coeff)) continue;

            if (p.record_commitment(agent, CommitmentAnswer::Confirmed, t, config.confirm_deadline,
                                    audit_of(s)) == RecordOutcome::Recorded) {
                ++confirmed;
                s.trace.emit(t, "confirm", as_actor(agent), std::to_string(p.id()));
            }
        }
        s.counters.max_confirms_in_step = std::max(s.counters.max_confirms_in_step, confirmed);
    }
}

void form_coalition(WorldState& s, Proposal& p, const SimConfig& config) {
    const Step t = s.step;
    for (auto m : p.coalition().members()) {
        if (s.membership[m.value]) apply_departure(s, m, config);
    }
    const CoalitionId id = s.next_coalition_id++;
    s.coalitions.emplace(id, Coalition{id, p.coalition(), p.initiator(), t});
    for (auto m : p.coalition().members()) s.membership[m.value] = id;
    s.lifetimes.push_back({id, p.coalition(), p.initiator(),
                           s.profiles[p.initiator().value].risk_attitude, t, std::nullopt});
    p.mark_formed(t, audit_of(s));
    ++s.counters.proposals_formed;
    s.trace.emit(t, "form", as_actor(p.initiator()),
                 std::to_string(id) + ":" + std::to_string(p.id()) + ":" + p.coalition().to_string());

    const double fee = config.enroll_fee;
    const double reward = config.initiator_reward_share * fee;
    for (auto m : p.coalition().members()) {
        if (m == p.initiator()) continue;
        post(s, LedgerKind::EnrollFee, m, -fee);
        post(s, LedgerKind::InitiatorReward, p.initiator(), reward);
        post(s, LedgerKind::FeeSink, m, fee - reward);
    }
}

void propose_round(WorldState& s, const SimConfig& config) {
    const Step t = s.step;
    for (std::size_t i = 0; i < s.n_agents(); ++i) {
        const AgentId agent{i};
        const Coalition* current = s.coalition_of(agent);
        auto candidates = generate_candidates(agent, s.histories[i], config, s.rng);
        InitiatorContext context{
            s.profiles[i],
            s.histories[i],
            current ? std::optional<CoalitionSet>(current->members) : std::nullopt,
            current_expected_utility(s, agent, current),
            within_obligatory_stay(current, t, config),
        };
        const auto chosen = select_proposals(agent, candidates, context, config);
        int opened = 0;
        for (const auto& c : chosen) {
            Proposal p = open_proposal(s.proposal_ids, agent, c.coalition, t);
            ++opened;
            ++s.counters.proposals_opened;
            post(s, LedgerKind::CommCost, agent, -config.comm_cost);
            s.histories[i].record_sent(p.coalition(), t);
            s.trace.emit(t, "open", as_actor(agent),
                         std::to_string(p.id()) + ":" + p.coalition().to_string());
            for (auto j : p.coalition().members()) {
                if (j == agent) continue;
                s.histories[j.value].record_received(p.coalition(), agent, t);
                const auto& responder = s.profiles[j.value];
                const auto answer = should_accept(j, p.coalition(), responder) ? AgreementAnswer::Yes
                                                                              : AgreementAnswer::No;
                const Step due = response_step(responder.responder_type, t, config.response_deadline, s.rng);
                s.pending_responses.push_back({p.id(), j, answer, due});
            }
            s.open_proposals.push_back(std::move(p));
        }
        s.counters.max_proposals_opened_in_step = std::max(s.counters.max_proposals_opened_in_step, opened);
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigViolation> violations)
    : std::invalid_argument(describe(violations)), violations_(std::move(violations)) {}

const Coalition* WorldState::coalition_of(AgentId agent) const {
    const auto& m = membership.at(agent.value);
    if (!m) return nullptr;
    return &coalitions.at(*m);
}

std::vector<std::string> check_partition(const WorldState& s) {
    std::vector<std::string> problems;
    std::vector<int> seen(s.n_agents(), 0);
    for (const auto& [id, c] : s.coalitions) {
        if (c.id != id) problems.push_back("coalition key mismatch for " + std::to_string(id));
        if (c.members.size() < 2) problems.push_back("coalition " + std::to_string(id) + " has fewer than 2 members");
        if (!c.members.contains(c.initiator)) {
            problems.push_back("coalition " + std::to_string(id) + " lost its initiator");
        }
        for (auto m : c.members.members()) {
            if (m.value >= s.n_agents()) {
                problems.push_back("coalition " + std::to_string(id) + " has unknown member");
                continue;
            }
            if (++seen[m.value] > 1) problems.push_back("agent " + std::to_string(m.value) + " is in two coalitions");
            if (s.membership[m.value] != id) {
                problems.push_back("membership of agent " + std::to_string(m.value) + " disagrees with coalition " +
                                   std::to_string(id));
            }
        }
    }
    for (std::size_t i = 0; i < s.n_agents(); ++i) {
        if (s.membership[i] && seen[i] == 0) {
            problems.push_back("agent " + std::to_string(i) + " points at a coalition that does not list it");
        }
    }
    return problems;
}

WorldState make_world(const SimConfig& config, const SimOptions& options) {
    WorldState s;
    s.rng = Rng(config.seed);
    s.profiles = make_profiles(config, s.rng);
    const auto n = s.profiles.size();
    s.trust = init_trust(config.n_agents);
    s.membership.assign(n, std::nullopt);
    s.histories.assign(n, ProposalHistory(n));
    s.ledger = Ledger(n);
    s.trace = TraceRecorder(options.record_trace);
    s.keep_audit = options.record_audit;
    return s;
}

ArbitrationResult arbitrate_formations(std::span<const Proposal* const> eligible, Rng& rng) {
    std::vector<const Proposal*> order(eligible.begin(), eligible.end());
    rng.shuffle(order);
    ArbitrationResult result;
    std::set<AgentId> bound;
    for (const Proposal* p : order) {
        const auto members = p->coalition().members();
        const bool blocked = std::any_of(members.begin(), members.end(),
                                         [&](AgentId m) { return bound.contains(m); });
        if (blocked) {
            result.cancelled.push_back(p->id());
            continue;
        }
        bound.insert(members.begin(), members.end());
        result.formed.push_back(p->id());
    }
    return result;
}

DepartureOutcome apply_departure(WorldState& s, AgentId agent, const SimConfig& config) {
    const auto& slot = s.membership.at(agent.value);
    if (!slot) {
        throw PreconditionError("agent " + std::to_string(agent.value) + " is not in a coalition");
    }
    const CoalitionId id = *slot;
    Coalition& c = s.coalitions.at(id);
    const Step t = s.step;
    const bool early = (t - c.formed_at) < config.obligatory_stay;

    c.members.erase(agent);
    s.membership[agent.value] = std::nullopt;
    s.trace.emit(t, "depart", as_actor(agent), std::to_string(id));
    ++s.counters.departures;

    DepartureOutcome out;
    const auto remaining = std::vector<AgentId>(c.members.members().begin(), c.members.members().end());
    if (early) {
        ++s.counters.early_departures;
        post(s, LedgerKind::LeavePenalty, agent, -config.leave_penalty);
        const double share = config.leave_penalty / static_cast<double>(remaining.size());
        for (auto m : remaining) post(s, LedgerKind::PenaltyShare, m, share);
        ++s.counters.penalised_departures;
        out.penalised = true;
    }
    for (auto m : remaining) {
        observe(s, m, agent, TrustEventKind::Left, config);
        observe(s, agent, m, TrustEventKind::Stayed, config);
    }

    if (remaining.size() == 1) {
        const AgentId last = remaining.front();
        s.membership[last.value] = std::nullopt;
        s.lifetimes.at(static_cast<std::size_t>(id)).dissolved_at = t;
        s.trace.emit(t, "dissolve", as_actor(last), std::to_string(id));
        s.coalitions.erase(id);
        out.dissolved = true;
    } else if (c.initiator == agent) {
        // The lowest remaining id takes over the initiator role.
        c.initiator = remaining.front();
        s.trace.emit(t, "handover", as_actor(c.initiator), std::to_string(id));
    }
    return out;
}

StepFrame advance_step(WorldState& s, const SimConfig& config, bool check_invariants) {
    const Step t = ++s.step;
    const std::size_t ledger_mark = s.ledger.entries().size();

    // 1. deadlines
    for (auto& p : s.open_proposals) {
        if (!p.terminal() && p.expire(t, config, audit_of(s))) note_cancel(s, p);
    }

    // 2. agreement answers due now
    deliver_due_agreements(s, config);

    // 3. confirmations
    commitment_round(s, config);

    // 4. arbitration
    std::vector<const Proposal*> eligible;
    for (const auto& p : s.open_proposals) {
        if (p.formation_eligible()) eligible.push_back(&p);
    }
    const auto arbitration = arbitrate_formations(eligible, s.rng);

    // 5. settlement: departures, penalties and fees happen inside form_coalition
    for (auto id : arbitration.formed) form_coalition(s, *find_open(s, id), config);
    for (auto id : arbitration.cancelled) {
        Proposal* p = find_open(s, id);
        p->cancel(t, "arbitration", audit_of(s));
        note_cancel(s, *p);
    }
    for (const auto& [id, c] : s.coalitions) {
        if (c.formed_at >= t) continue;
        for (auto observer : c.members.members()) {
            for (auto subject : c.members.members()) {
                if (observer != subject) observe(s, observer, subject, TrustEventKind::Stayed, config);
            }
        }
    }

    // 6. accrual
    for (std::size_t i = 0; i < s.n_agents(); ++i) {
        const AgentId agent{i};
        const Coalition* current = s.coalition_of(agent);
        const UtilityValue u = current ? coalition_utility(agent, current->members, s.profiles[i]) : 0.0;
        post(s, LedgerKind::UtilityAccrual, agent, u);
    }

    // 7. new proposals; answers due this same step are released at once
    propose_round(s, config);
    deliver_due_agreements(s, config);
    std::erase_if(s.open_proposals, [](const Proposal& p) { return p.terminal(); });

    // 8. snapshot
    StepFrame frame;
    frame.step = t;
    const auto roles = classify_roles(s);
    frame.alone_count = roles.alone;
    frame.solicited_count = roles.solicited;
    frame.initiator_count = roles.initiator;
    frame.coalitions_active = static_cast<int>(s.coalitions.size());
    frame.coalitions_formed_this_step = static_cast<int>(arbitration.formed.size());
    std::size_t members = 0;
    for (const auto& [id, c] : s.coalitions) members += c.members.size();
    frame.mean_coalition_size =
        s.coalitions.empty() ? 0.0 : static_cast<double>(members) / static_cast<double>(s.coalitions.size());

    if (s.trace.enabled()) {
        for (std::size_t i = 0; i < s.n_agents(); ++i) {
            s.trace.emit(t, "balance", static_cast<std::int64_t>(i), "-", s.ledger.balance(AgentId{i}));
        }
        for (const auto& [id, c] : s.coalitions) {
            s.trace.emit(t, "coalition", id,
                         std::to_string(c.initiator.value) + ":" + c.members.to_string());
        }
    }

    if (check_invariants) {
        auto problems = check_partition(s);
        if (roles.alone + roles.solicited + roles.initiator != static_cast<int>(s.n_agents())) {
            problems.push_back("role counts do not sum to the population");
        }
        if (roles.initiator != frame.coalitions_active) {
            problems.push_back("initiator count differs from live coalition count");
        }
        const auto entries = s.ledger.entries().subspan(ledger_mark);
        for (auto& p : check_ledger_conservation(entries)) problems.push_back(std::move(p));
        if (s.counters.max_confirms_in_step > config.max_confirms_per_step) {
            problems.push_back("an agent exceeded the confirmation budget");
        }
        if (s.counters.max_proposals_opened_in_step > config.max_proposals_per_step) {
            problems.push_back("an agent exceeded the proposal budget");
        }
        if (!problems.empty()) {
            std::string msg = "invariant violated at step " + std::to_string(t) + ":";
            for (const auto& p : problems) msg += " " + p + ";";
            throw InvariantViolation(msg);
        }
    }
    return frame;
}

RunResult run_simulation(const SimConfig& config, const SimOptions& options) {
    if (auto violations = validate_config(config); !violations.empty()) {
        throw ConfigError(std::move(violations));
    }
    WorldState s = make_world(config, options);
    RunResult r;
    r.frames.reserve(static_cast<std::size_t>(config.n_steps));
    for (int k = 0; k < config.n_steps; ++k) {
        r.frames.push_back(advance_step(s, config, options.check_invariants));
    }
    r.config = config;
    r.seed = config.seed;
    r.profiles = std::move(s.profiles);
    r.ledger = std::move(s.ledger);
    r.lifetimes = std::move(s.lifetimes);
    r.final_trust = std::move(s.trust);
    r.trace = std::move(s.trace).take();
    r.audit = std::move(s.audit);
    r.counters = s.counters;
    return r;
}

}  // namespace hedonica
