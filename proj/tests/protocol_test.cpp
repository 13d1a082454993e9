#include <vector>

#include <gtest/gtest.h>

#include "hedonica/protocol.hpp"
#include "hedonica/rng.hpp"

using namespace hedonica;

namespace {

constexpr int kDeadline = 3;

Proposal three_way(Step created = 5) {
    ProposalIdSource ids;
    return open_proposal(ids, AgentId{0}, CoalitionSet({0, 1, 2}), created);
}

}  // namespace

TEST(OpenProposal, SolicitedAnswersStartPending) {
    const auto p = three_way();
    EXPECT_EQ(p.phase(), ProposalPhase::Agreement);
    ASSERT_EQ(p.agreement().size(), 2u);
    EXPECT_TRUE(p.is_solicited(AgentId{1}));
    EXPECT_TRUE(p.is_solicited(AgentId{2}));
    EXPECT_FALSE(p.is_solicited(AgentId{0}));
    for (const auto& [agent, answer] : p.agreement()) EXPECT_EQ(answer, AgreementAnswer::Pending);
    for (const auto& [agent, answer] : p.commitment()) EXPECT_EQ(answer, CommitmentAnswer::Pending);
}

TEST(OpenProposal, RejectsDegenerateCoalitions) {
    ProposalIdSource ids;
    EXPECT_THROW(open_proposal(ids, AgentId{0}, CoalitionSet({0}), 1), PreconditionError);
    EXPECT_THROW(open_proposal(ids, AgentId{0}, CoalitionSet({1, 2}), 1), PreconditionError);
}

TEST(OpenProposal, IdsIncrease) {
    ProposalIdSource ids;
    const auto a = open_proposal(ids, AgentId{0}, CoalitionSet({0, 1}), 1);
    const auto b = open_proposal(ids, AgentId{1}, CoalitionSet({1, 2}), 1);
    EXPECT_LT(a.id(), b.id());
}

TEST(Agreement, AllYesEntersCommitment) {
    auto p = three_way();
    EXPECT_EQ(p.record_agreement(AgentId{1}, AgreementAnswer::Yes, 5, kDeadline), RecordOutcome::Recorded);
    EXPECT_EQ(p.phase(), ProposalPhase::Agreement);
    EXPECT_EQ(p.record_agreement(AgentId{2}, AgreementAnswer::Yes, 6, kDeadline), RecordOutcome::Recorded);
    EXPECT_EQ(p.phase(), ProposalPhase::Commitment);
    EXPECT_EQ(p.commitment_started_at(), 6);
    EXPECT_TRUE(p.all_agreed());
}

TEST(Agreement, AnyNoCancels) {
    auto p = three_way();
    p.record_agreement(AgentId{1}, AgreementAnswer::Yes, 5, kDeadline);
    p.record_agreement(AgentId{2}, AgreementAnswer::No, 5, kDeadline);
    EXPECT_EQ(p.phase(), ProposalPhase::Cancelled);
}

TEST(Agreement, PendingAtDeadlineExpires) {
    std::vector<Proposal> open{three_way(5)};
    open[0].record_agreement(AgentId{1}, AgreementAnswer::Yes, 5, kDeadline);
    SimConfig c;
    EXPECT_TRUE(expire_proposals(open, 7, c).empty());
    const auto cancelled = expire_proposals(open, 8, c);
    ASSERT_EQ(cancelled.size(), 1u);
    EXPECT_EQ(cancelled[0], open[0].id());
    EXPECT_EQ(open[0].phase(), ProposalPhase::Cancelled);
}

TEST(Agreement, IgnoredResponsesAreLogged) {
    auto p = three_way(5);
    AuditLog audit;
    EXPECT_EQ(p.record_agreement(AgentId{1}, AgreementAnswer::Yes, 8, kDeadline, &audit), RecordOutcome::Late);
    EXPECT_EQ(p.record_agreement(AgentId{0}, AgreementAnswer::Yes, 5, kDeadline, &audit), RecordOutcome::NotSolicited);
    EXPECT_EQ(p.record_agreement(AgentId{1}, AgreementAnswer::Yes, 7, kDeadline, &audit), RecordOutcome::Recorded);
    EXPECT_EQ(p.record_agreement(AgentId{1}, AgreementAnswer::No, 7, kDeadline, &audit), RecordOutcome::Duplicate);
    EXPECT_EQ(p.record_commitment(AgentId{1}, CommitmentAnswer::Confirmed, 7, kDeadline, &audit),
              RecordOutcome::WrongPhase);
    EXPECT_EQ(p.phase(), ProposalPhase::Agreement);
    int ignored = 0;
    for (const auto& e : audit) ignored += e.event.starts_with("ignored-");
    EXPECT_EQ(ignored, 4);
}

TEST(Commitment, AllConfirmedIsEligible) {
    auto p = three_way(5);
    p.record_agreement(AgentId{1}, AgreementAnswer::Yes, 5, kDeadline);
    p.record_agreement(AgentId{2}, AgreementAnswer::Yes, 5, kDeadline);
    p.record_commitment(AgentId{1}, CommitmentAnswer::Confirmed, 6, kDeadline);
    EXPECT_FALSE(p.formation_eligible());
    p.record_commitment(AgentId{2}, CommitmentAnswer::Confirmed, 7, kDeadline);
    EXPECT_TRUE(p.formation_eligible());
    p.mark_formed(7);
    EXPECT_EQ(p.phase(), ProposalPhase::Formed);
}

TEST(Commitment, DeclineCancelsAndLaterAnswersAreIgnored) {
    auto p = three_way(5);
    p.record_agreement(AgentId{1}, AgreementAnswer::Yes, 5, kDeadline);
    p.record_agreement(AgentId{2}, AgreementAnswer::Yes, 5, kDeadline);
    p.record_commitment(AgentId{1}, CommitmentAnswer::Declined, 5, kDeadline);
    EXPECT_EQ(p.phase(), ProposalPhase::Cancelled);
    EXPECT_EQ(p.record_commitment(AgentId{2}, CommitmentAnswer::Confirmed, 6, kDeadline), RecordOutcome::Terminal);
    EXPECT_EQ(p.commitment().at(AgentId{2}), CommitmentAnswer::Pending);
}

TEST(Commitment, ClockStartsWhenAgreementCompletes) {
    std::vector<Proposal> open{three_way(4)};
    open[0].record_agreement(AgentId{1}, AgreementAnswer::Yes, 5, kDeadline);
    open[0].record_agreement(AgentId{2}, AgreementAnswer::Yes, 6, kDeadline);
    open[0].record_commitment(AgentId{1}, CommitmentAnswer::Confirmed, 6, kDeadline);
    SimConfig c;
    EXPECT_TRUE(expire_proposals(open, 8, c).empty());
    EXPECT_EQ(open[0].record_commitment(AgentId{2}, CommitmentAnswer::Confirmed, 9, kDeadline), RecordOutcome::Late);
    EXPECT_EQ(expire_proposals(open, 9, c).size(), 1u);
    EXPECT_EQ(open[0].phase(), ProposalPhase::Cancelled);
}

TEST(Expiry, FullyAnsweredProposalIsUntouched) {
    std::vector<Proposal> open{three_way(5)};
    open[0].record_agreement(AgentId{1}, AgreementAnswer::Yes, 5, kDeadline);
    open[0].record_agreement(AgentId{2}, AgreementAnswer::Yes, 5, kDeadline);
    open[0].record_commitment(AgentId{1}, CommitmentAnswer::Confirmed, 5, kDeadline);
    open[0].record_commitment(AgentId{2}, CommitmentAnswer::Confirmed, 5, kDeadline);
    EXPECT_TRUE(expire_proposals(open, 20, SimConfig{}).empty());
    EXPECT_TRUE(open[0].formation_eligible());
}

TEST(Lifecycle, IllegalTransitionsThrow) {
    auto p = three_way();
    EXPECT_THROW(p.mark_formed(5), PreconditionError);
    p.cancel(5, "test");
    EXPECT_THROW(p.cancel(6, "again"), PreconditionError);
    EXPECT_THROW(p.mark_formed(6), PreconditionError);
}

TEST(Lifecycle, FuzzedEventSequencesFollowTheStateMachine) {
    Rng rng(4242);
    SimConfig config;
    for (int trial = 0; trial < 5000; ++trial) {
        const auto size = static_cast<std::size_t>(rng.uniform_int(2, 5));
        std::vector<AgentId> members;
        for (std::size_t i = 0; i < size; ++i) members.push_back(AgentId{i});
        ProposalIdSource ids;
        const Step created = rng.uniform_int(1, 10);
        std::vector<Proposal> open{open_proposal(ids, AgentId{0}, CoalitionSet(members), created)};
        Proposal& p = open[0];
        ProposalPhase last = p.phase();
        bool formed_cleanly = false;
        // Allowed moves: Agreement -> {Commitment, Cancelled}, Commitment -> {Formed, Cancelled}.
        auto check_move = [&] {
            const auto now = p.phase();
            if (last == now) return true;
            const bool legal = (last == ProposalPhase::Agreement &&
                                (now == ProposalPhase::Commitment || now == ProposalPhase::Cancelled)) ||
                               (last == ProposalPhase::Commitment &&
                                (now == ProposalPhase::Formed || now == ProposalPhase::Cancelled));
            last = now;
            return legal;
        };

        for (Step step = created; step < created + 10 && !p.terminal(); ++step) {
            expire_proposals(open, step, config);
            ASSERT_TRUE(check_move());
            const int events = static_cast<int>(rng.uniform_int(0, 4));
            for (int e = 0; e < events; ++e) {
                const AgentId who{rng.uniform_index(size + 1)};
                const bool was_terminal = p.terminal();
                RecordOutcome outcome;
                if (rng.uniform01() < 0.5) {
                    outcome = p.record_agreement(who, rng.uniform01() < 0.85 ? AgreementAnswer::Yes : AgreementAnswer::No,
                                                 step, config.response_deadline);
                } else {
                    outcome = p.record_commitment(
                        who, rng.uniform01() < 0.9 ? CommitmentAnswer::Confirmed : CommitmentAnswer::Declined, step,
                        config.confirm_deadline);
                }
                if (was_terminal) { ASSERT_EQ(outcome, RecordOutcome::Terminal); }
                ASSERT_TRUE(check_move());
            }
            if (p.formation_eligible() && rng.uniform01() < 0.5) {
                p.mark_formed(step);
                formed_cleanly = p.all_agreed() && p.all_confirmed();
                ASSERT_TRUE(check_move());
            }
        }
        if (p.phase() == ProposalPhase::Formed) { ASSERT_TRUE(formed_cleanly); }
        // Every proposal settles within both deadlines unless it is eligible and waiting for arbitration.
        if (!p.terminal() && !p.formation_eligible()) {
            expire_proposals(open, created + config.response_deadline + config.confirm_deadline, config);
            ASSERT_TRUE(p.terminal());
        }
    }
}
