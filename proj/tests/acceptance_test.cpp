// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
//
// End-to-end acceptance checks. Each test covers one numbered criterion and
// prints a PASS/FAIL line, so a plain ctest log shows the whole scorecard.
// Tolerances are pinned here, not configurable.
#include <trustledger/serialize.hpp>
#include <trustledger/sim.hpp>

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

namespace trustledger {
namespace {

void report(int criterion, const char* what) {
    std::printf("[acceptance] criterion %02d %s: %s\n", criterion, what,
                ::testing::Test::HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioConfig load_config(const std::string& name) {
    const std::string path = std::string(TRUSTLEDGER_CONFIG_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("missing shipped config: " + path);
    nlohmann::json j;
    in >> j;
    return ScenarioConfig::from_json(j);
}

const std::vector<std::string>& attack_config_names() {
    static const std::vector<std::string> names = {
        "badmouthing.json", "goodmouthing.json", "collusion.json",
        "sybil.json",       "onoff.json",        "opportunistic.json",
    };
    return names;
}

// Random evidence maps shared by the normalization and bound checks. Small
// enough to enumerate exactly: at most 6 interactions with at most 4
// feedbacks each.
struct RandomMap {
    EvidenceMap map;
    std::vector<Uid> context;
};

const std::vector<RandomMap>& random_corpus() {
    static const std::vector<RandomMap> corpus = [] {
        std::vector<RandomMap> out;
        std::mt19937_64 rng(20260814);
        for (int i = 0; i < 512; ++i) {
            std::vector<Interaction> inter;
            std::vector<Review> reviews;
            std::vector<Uid> context;
            const std::size_t nInter = rng() % 7;  // 0..6
            std::uint32_t seq = 0;
            for (std::size_t k = 0; k < nInter; ++k) {
                const Uid uid = k + 1;
                inter.push_back({uid, "u" + std::to_string(uid), "y",
                                 {1, static_cast<std::uint32_t>(k)}});
                context.push_back(uid);
                const std::size_t nFb = rng() % 5;  // 0..4
                for (std::size_t f = 0; f < nFb; ++f)
                    reviews.push_back({{2, seq++}, "u" + std::to_string(uid), uid,
                                       static_cast<std::int64_t>(rng() % 6)});
            }
            out.push_back({EvidenceMap::from_parts(std::move(inter), std::move(reviews)),
                           std::move(context)});
        }
        return out;
    }();
    return corpus;
}

const std::vector<EvidenceSelection>& selection_variants() {
    static const std::vector<EvidenceSelection> v = {
        EvidenceSelection::deterministic(),
        EvidenceSelection::uniform(),
        EvidenceSelection::fresh_biased(0.37),
        EvidenceSelection::geometric(0.61),
    };
    return v;
}

const std::vector<BenchRow>& review_bench() {
    static const std::vector<BenchRow> rows =
        bench_throughput({10, 100, 1000, 10'000}, TxKind::ReviewSubmission);
    return rows;
}

TEST(Acceptance, Criterion01WorkedExample) {
    const auto t0 = std::chrono::steady_clock::now();

    auto node = replay_fixture("worked-example");
    EvidenceMap m = EvidenceMap::build(node->ledger().query_events());
    const auto mech = average_mechanism();
    const auto uniform = EvidenceSelection::uniform();
    const auto fresh = EvidenceSelection::fresh_biased(0.5);

    EXPECT_DOUBLE_EQ(sigma_service(m, "printer-y1", std::nullopt, mech, uniform).value, 0.75);
    EXPECT_DOUBLE_EQ(sigma_service(m, "printer-y1", std::vector<Uid>{1}, mech, uniform).value,
                     0.5);
    EXPECT_DOUBLE_EQ(sigma_service(m, "printer-y1", std::vector<Uid>{2}, mech, uniform).value,
                     1.0);

    const double freshFull = sigma_service(m, "printer-y1", std::nullopt, mech, fresh).value;
    EXPECT_NEAR(freshFull, 5.0 / 6.0, 1e-12);   // exact derived value
    EXPECT_NEAR(freshFull, 0.835, 0.01);        // published rounding
    const double freshFirst =
        sigma_service(m, "printer-y1", std::vector<Uid>{1}, mech, fresh).value;
    EXPECT_NEAR(freshFirst, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(freshFirst, 0.67, 0.01);

    EXPECT_LT(seconds_since(t0), 1.0);
    report(1, "worked example scores");
}

TEST(Acceptance, Criterion02SelectionWeightsNormalize) {
    const auto t0 = std::chrono::steady_clock::now();

    std::size_t violations = 0;
    for (const RandomMap& rm : random_corpus()) {
        for (const EvidenceSelection& sel : selection_variants()) {
            MaximalTraceEnumerator e(rm.map, rm.context);
            double total = 0.0;
            FeedbackTrace t;
            while (e.next(t)) {
                double w = 1.0;
                for (const TraceEntry& entry : t.entries())
                    w *= sel.weight(rm.map, entry.interaction, entry.review);
                total += w;
            }
            if (std::abs(total - 1.0) > 1e-9)
                ++violations;
        }
    }
    EXPECT_EQ(violations, 0u);
    EXPECT_LT(seconds_since(t0), 30.0);
    report(2, "trace weights sum to one on 512 random maps x 4 selections");
}

TEST(Acceptance, Criterion03ScoreBounds) {
    std::size_t violations = 0;
    for (const RandomMap& rm : random_corpus()) {
        for (const EvidenceSelection& sel : selection_variants()) {
            for (const auto& mech : {average_mechanism(), latest_mechanism()}) {
                const ScoreResult r = sigma_bruteforce(rm.map, rm.context, mech, sel);
                if (r.value > 1.0 + 1e-12)
                    ++violations;  // mechanisms are [0,1]-valued pointwise
                if (r.domainSize >= 1 &&
                    r.value > static_cast<double>(r.domainSize) + 1e-12)
                    ++violations;  // linear bound over reviewed interactions
                if (r.domainSize == 0 && r.value != mech.empty_trace_value())
                    ++violations;  // no evidence answers the convention exactly
            }
        }
    }
    EXPECT_EQ(violations, 0u);
    report(3, "score bounds hold with zero violations");
}

TEST(Acceptance, Criterion04OnlineMatchesBruteforce) {
    std::mt19937_64 rng(424242);
    double worst = 0.0;
    for (int instance = 0; instance < 200; ++instance) {
        std::vector<Interaction> inter;
        std::vector<Review> reviews;
        const std::size_t nInter = 1 + rng() % 10;
        std::uint32_t seq = 0;
        for (std::size_t k = 0; k < nInter; ++k)
            inter.push_back({k + 1, "u", "y", {1, static_cast<std::uint32_t>(k)}});
        // reviews arrive in chain order; roughly a third of them re-review
        // an interaction that already has feedback
        const std::size_t nReviews = nInter + rng() % (2 * nInter);
        for (std::size_t r = 0; r < nReviews; ++r) {
            const Uid uid = 1 + rng() % nInter;
            reviews.push_back({{2, seq++}, "u", uid, static_cast<std::int64_t>(rng() % 6)});
        }

        OnlineAverageScore online;
        for (const Review& r : reviews)
            online.observe(*r.uid, r.rating);

        EvidenceMap m = EvidenceMap::from_parts(std::move(inter), std::move(reviews));
        std::vector<Uid> context;
        for (Uid u = 1; u <= nInter; ++u)
            context.push_back(u);
        const double brute = sigma_bruteforce(m, context, average_mechanism(),
                                              EvidenceSelection::deterministic())
                                 .value;
        worst = std::max(worst, std::abs(online.value() - brute));
    }
    EXPECT_LE(worst, 1e-12);
    report(4, "online average equals bruteforce on 200 random instances");
}

TEST(Acceptance, Criterion05StreamLimitBehavior) {
    auto node = replay_fixture("alternating-stream", 10'000);
    EvidenceMap m = EvidenceMap::build(node->ledger().query_events());
    const std::vector<Uid>& order = m.interactions_of_service("svc-alt");
    ASSERT_EQ(order.size(), 10'000u);

    const LimitResult avg = sigma_limit(m, order, average_mechanism(),
                                        EvidenceSelection::deterministic(), 1e-3, 10'000);
    EXPECT_TRUE(avg.converged);
    EXPECT_NEAR(avg.value, 0.5, 1e-3);
    EXPECT_LE(avg.steps, 10'000u);

    const LimitResult latest = sigma_limit(m, order, latest_mechanism(),
                                           EvidenceSelection::deterministic(), 1e-3, 10'000);
    EXPECT_FALSE(latest.converged);  // the score keeps flipping between 0 and 1
    EXPECT_EQ(latest.steps, 10'000u);
    report(5, "alternating stream: average converges, latest does not");
}

TEST(Acceptance, Criterion06FeedbackAlwaysBacked) {
    // every shipped attack scenario leaves a chain where each feedback event
    // is preceded by a matching interaction of the same submitter
    std::unique_ptr<Node> probe;
    for (const std::string& name : attack_config_names()) {
        ScenarioResult r = run_scenario(load_config(name));
        EXPECT_TRUE(r.metrics.feedbackBackingClean) << name;
        EXPECT_TRUE(scan_feedback_backing(r.node->ledger().blocks()).empty()) << name;
        if (!probe)
            probe = std::move(r.node);
    }
    ASSERT_TRUE(probe);
    if (probe->ledger().pending_count() > 0)
        probe->produce_block(probe->next_block_time());

    // direct injection attempts must all revert with the typed errors
    EventFilter onlyInteractions;
    onlyInteractions.kind = EventKind::Interaction;
    const auto interactions = probe->ledger().query_events(onlyInteractions);
    ASSERT_FALSE(interactions.empty());
    Address victim, owner;
    Uid ownUid = 0, foreignUid = 0;
    owner = std::get<InteractionEventPayload>(interactions.front().payload).user;
    ownUid = std::get<InteractionEventPayload>(interactions.front().payload).uid;
    for (const auto& e : interactions) {
        const auto& p = std::get<InteractionEventPayload>(e.payload);
        if (p.user != owner) {
            victim = p.user;
            foreignUid = p.uid;
            break;
        }
    }
    ASSERT_FALSE(victim.empty());

    auto inject = [&](const Address& sender, const Address& submitter, Uid uid,
                      std::uint32_t rating) {
        Transaction tx;
        tx.sender = sender;
        tx.payload = ReviewSubmissionPayload{submitter, uid, rating};
        ASSERT_TRUE(probe->ledger().submit_transaction(std::move(tx)).accepted);
    };
    inject(owner, owner, 1'000'000'000, 5);  // no such interaction
    inject(owner, owner, foreignUid, 5);     // someone else's interaction
    inject(owner, victim, ownUid, 5);        // forged submitter field
    inject(owner, owner, ownUid, 6);         // rating beyond the scale
    probe->produce_block(probe->next_block_time());

    const Block& b = probe->ledger().last_block();
    ASSERT_EQ(b.transactions.size(), 4u);
    EXPECT_EQ(b.transactions[0].error, ExecError::NoSuchInteraction);
    EXPECT_EQ(b.transactions[1].error, ExecError::SubmitterMismatch);
    EXPECT_EQ(b.transactions[2].error, ExecError::SubmitterMismatch);
    EXPECT_EQ(b.transactions[3].error, ExecError::RatingOutOfRange);
    for (const auto& tx : b.transactions)
        EXPECT_EQ(tx.status, TxStatus::Reverted);
    EXPECT_TRUE(b.events.empty());
    EXPECT_TRUE(scan_feedback_backing(probe->ledger().blocks()).empty());
    report(6, "all feedback backed; injections rejected with typed errors");
}

TEST(Acceptance, Criterion07BlockSaturation) {
    const auto& rows = review_bench();
    ASSERT_EQ(rows.size(), 4u);

    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(rows[i].blocks, 1u) << "workload " << rows[i].workload;
        EXPECT_DOUBLE_EQ(rows[i].avgTxPerBlock, static_cast<double>(rows[i].workload));
    }
    EXPECT_DOUBLE_EQ(rows[3].avgTxPerBlock, 5000.0);  // the block gas limit caps here
    EXPECT_GE(rows[1].tps, rows[0].tps);
    EXPECT_GE(rows[2].tps, rows[1].tps);
    report(7, "bench saturates at the block gas limit");
}

TEST(Acceptance, Criterion08FeeTrend) {
    const auto& rows = review_bench();
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_GE(rows[i].avgFeePerTx, rows[i - 1].avgFeePerTx);
    EXPECT_GT(rows[3].avgFeePerTx, rows[0].avgFeePerTx);
    report(8, "per-transaction fee grows with congestion");
}

TEST(Acceptance, Criterion09AttackEconomicsAndDetection) {
    // sybil: twenty throwaway identities, all caught, honest accounts spared
    const ScenarioConfig sybilCfg = load_config("sybil.json");
    const ScenarioResult sybil = run_scenario(sybilCfg);
    ASSERT_EQ(sybil.metrics.attacks.size(), 1u);
    const AttackMetrics& sy = sybil.metrics.attacks[0];

    TokenAmount price = 0;
    for (const ServiceSpec& s : sybilCfg.services)
        if (s.id == sybilCfg.attacks[0].target)
            price = s.price;
    const TokenAmount baseFee =
        base_gas_cost(TxKind::AccessRequest) * sybilCfg.ledger.baseGasPrice;
    EXPECT_GE(sy.spend, 20 * (price + baseFee));

    std::set<Address> flaggedClones, flaggedHonest;
    auto it = sybil.metrics.reports.find("prov-0");
    ASSERT_NE(it, sybil.metrics.reports.end());
    for (const DetectionReport& r : it->second) {
        if (r.kind != DetectionKind::ShortLivedAccount)
            continue;
        if (r.subject.rfind("sybil-", 0) == 0)
            flaggedClones.insert(r.subject);
        if (r.subject.rfind("user-", 0) == 0)
            flaggedHonest.insert(r.subject);
    }
    EXPECT_EQ(flaggedClones.size(), 20u);
    EXPECT_TRUE(flaggedHonest.empty());

    // collusion: the spike fires inside the attack window and only there
    const ScenarioConfig colluded = load_config("collusion.json");
    ScenarioConfig quiet = colluded;
    quiet.attacks.clear();

    const std::uint64_t atkStart = colluded.attacks[0].startBlock;
    const ScenarioResult hot = run_scenario(colluded);
    const ScenarioResult calm = run_scenario(quiet);

    std::size_t spikesInWindow = 0, spikesCalm = 0;
    for (const DetectionReport& r : hot.metrics.reports.at("prov-0"))
        if (r.kind == DetectionKind::FeedbackSpike && r.lastBlock >= atkStart)
            ++spikesInWindow;
    if (auto c = calm.metrics.reports.find("prov-0"); c != calm.metrics.reports.end())
        for (const DetectionReport& r : c->second)
            if (r.kind == DetectionKind::FeedbackSpike)
                ++spikesCalm;
    EXPECT_GE(spikesInWindow, 1u);
    EXPECT_EQ(spikesCalm, 0u);
    report(9, "sybil economics, short-lived catch, collusion spike");
}

TEST(Acceptance, Criterion10ProviderUniversality) {
    ScenarioConfig cfg = load_config("baseline.json");
    ASSERT_EQ(cfg.providers.size(), 1u);
    TrustProviderConfig twin = cfg.providers[0];
    twin.address = "prov-1";
    cfg.providers.push_back(twin);

    const ScenarioResult r = run_scenario(cfg);
    const auto& t0 = r.metrics.trajectories.at("prov-0");
    const auto& t1 = r.metrics.trajectories.at("prov-1");
    ASSERT_EQ(t0.size(), t1.size());

    double worst = 0.0;
    for (const auto& [svc, samples0] : t0) {
        const auto& samples1 = t1.at(svc);
        ASSERT_EQ(samples0.size(), samples1.size()) << svc;
        for (std::size_t i = 0; i < samples0.size(); ++i) {
            ASSERT_EQ(samples0[i].first, samples1[i].first) << svc;
            worst = std::max(worst, std::abs(samples0[i].second - samples1[i].second));
        }
    }
    EXPECT_LE(worst, 1e-12);
    report(10, "identically configured providers agree everywhere");
}

TEST(Acceptance, Criterion11ChainIntegrity) {
    // every shipped scenario must leave a verifiable chain
    std::unique_ptr<Node> donor;
    std::vector<std::string> all = attack_config_names();
    all.insert(all.begin(), {"baseline.json", "worked-example.json"});
    for (const std::string& name : all) {
        ScenarioResult r = run_scenario(load_config(name));
        EXPECT_TRUE(r.metrics.chainValid) << name;
        if (name == "baseline.json")
            donor = std::move(r.node);
    }
    ASSERT_TRUE(donor);
    const std::vector<Block> pristine = donor->ledger().blocks();

    // find a sealed review to flip
    std::uint64_t reviewBlock = 0;
    for (const Block& b : pristine) {
        for (const Transaction& tx : b.transactions)
            if (std::holds_alternative<ReviewSubmissionPayload>(tx.payload) &&
                tx.status == TxStatus::Success) {
                reviewBlock = b.number;
                break;
            }
        if (reviewBlock)
            break;
    }
    ASSERT_GT(reviewBlock, 0u);

    {  // tamper 1: flip a rating inside a sealed block
        std::vector<Block> blocks = pristine;
        for (Transaction& tx : blocks[reviewBlock].transactions)
            if (auto* p = std::get_if<ReviewSubmissionPayload>(&tx.payload)) {
                p->rating = p->rating == 0 ? 5 : 0;
                break;
            }
        Ledger tampered;
        tampered.restore_chain(std::move(blocks));
        const VerifyResult vr = tampered.verify_chain();
        EXPECT_FALSE(vr.ok);
        EXPECT_EQ(vr.blockNumber, reviewBlock);
    }

    {  // tamper 2: append a block that replays an existing interaction uid
        std::vector<Block> blocks = pristine;
        EventFilter f;
        f.kind = EventKind::Interaction;
        const auto events = donor->ledger().query_events(f);
        ASSERT_FALSE(events.empty());
        const auto& stolen = std::get<InteractionEventPayload>(events.front().payload);

        Block forged;
        forged.number = blocks.back().number + 1;
        forged.parentHash = blocks.back().hash;
        forged.timestamp = blocks.back().timestamp + 12;
        forged.events.push_back({{forged.number, 0}, stolen});
        forged.hash = compute_block_hash(forged);
        blocks.push_back(forged);

        Ledger tampered;
        tampered.restore_chain(std::move(blocks));
        const VerifyResult vr = tampered.verify_chain();
        EXPECT_FALSE(vr.ok);
        EXPECT_EQ(vr.blockNumber, pristine.back().number + 1);
        EXPECT_NE(vr.reason.find("duplicate"), std::string::npos);
    }

    {  // tamper 3: break a parent link midway and re-seal the block hash
        std::vector<Block> blocks = pristine;
        const std::size_t k = blocks.size() / 2;
        const std::uint64_t brokenNumber = blocks[k].number;
        blocks[k].parentHash.bytes[7] ^= 0x01;
        blocks[k].hash = compute_block_hash(blocks[k]);
        Ledger tampered;
        tampered.restore_chain(std::move(blocks));
        const VerifyResult vr = tampered.verify_chain();
        EXPECT_FALSE(vr.ok);
        EXPECT_EQ(vr.blockNumber, brokenNumber);
        EXPECT_NE(vr.reason.find("parent"), std::string::npos);
    }
    report(11, "verification passes clean chains and pinpoints tampering");
}

}  // namespace
}  // namespace trustledger
