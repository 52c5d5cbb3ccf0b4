// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/sim.hpp>

#include <trustledger/serialize.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace trustledger {
namespace {

using nlohmann::json;

ScenarioConfig small_scenario() {
    ScenarioConfig cfg;
    cfg.seed = 42;
    cfg.durationBlocks = 20;
    cfg.users.count = 4;
    cfg.users.interactionRate = 0.8;
    cfg.services = {{"svc-a", 0.9, 10}, {"svc-b", 0.3, 10}};
    TrustProviderConfig prov;
    prov.address = "prov-0";
    prov.selection = "uniform";
    cfg.providers = {prov};
    return cfg;
}

TEST(ActorEngineTest, StreamsAreStableAndIndependent) {
    auto a1 = actor_engine(1, "user", 0);
    auto a2 = actor_engine(1, "user", 0);
    EXPECT_EQ(a1(), a2());  // same triple, same stream

    auto b = actor_engine(1, "user", 1);
    auto c = actor_engine(1, "attacker", 0);
    auto d = actor_engine(2, "user", 0);
    std::mt19937_64 base = actor_engine(1, "user", 0);
    const std::uint64_t first = base();
    EXPECT_NE(b(), first);
    EXPECT_NE(c(), first);
    EXPECT_NE(d(), first);
}

TEST(ScenarioConfigTest, JsonRoundTrip) {
    ScenarioConfig cfg = small_scenario();
    cfg.attacks.push_back({AttackKind::BadMouthing, "svc-a", 5, 2.0, 1, 0, 5, 0, 500'000'000});
    const nlohmann::ordered_json j = cfg.to_json();
    const ScenarioConfig back = ScenarioConfig::from_json(j);
    EXPECT_EQ(back.seed, cfg.seed);
    EXPECT_EQ(back.durationBlocks, cfg.durationBlocks);
    EXPECT_EQ(back.users.count, cfg.users.count);
    ASSERT_EQ(back.services.size(), 2u);
    EXPECT_EQ(back.services[1].id, "svc-b");
    EXPECT_DOUBLE_EQ(back.services[1].quality, 0.3);
    ASSERT_EQ(back.attacks.size(), 1u);
    EXPECT_EQ(back.attacks[0].kind, AttackKind::BadMouthing);
    EXPECT_EQ(back.attacks[0].target, "svc-a");
    ASSERT_EQ(back.providers.size(), 1u);
    EXPECT_EQ(back.providers[0].address, "prov-0");
    EXPECT_EQ(ScenarioConfig::from_json(back.to_json()).to_json(), j);
}

TEST(ScenarioConfigTest, RejectsBadInput) {
    EXPECT_THROW(ScenarioConfig::from_json(json::parse(R"({"durationBlocks":0})")), ConfigError);
    EXPECT_THROW(ScenarioConfig::from_json(json::parse(
                     R"({"services":[{"id":"s","quality":1.5}]})")),
                 ConfigError);
    // an attack must aim at a configured service
    EXPECT_THROW(ScenarioConfig::from_json(json::parse(
                     R"({"services":[{"id":"s"}],
                         "attacks":[{"kind":"badmouthing","target":"ghost"}]})")),
                 ConfigError);
    EXPECT_THROW(ScenarioConfig::from_json(json::parse(
                     R"({"services":[{"id":"s"}],
                         "attacks":[{"kind":"martian","target":"s"}]})")),
                 ConfigError);
}

TEST(ScenarioTest, BaselineRunIsValidAndDeterministic) {
    const ScenarioConfig cfg = small_scenario();
    const ScenarioResult r1 = run_scenario(cfg);
    const ScenarioResult r2 = run_scenario(cfg);

    EXPECT_TRUE(r1.metrics.chainValid);
    EXPECT_TRUE(r1.metrics.feedbackBackingClean);
    EXPECT_GT(r1.metrics.txCount, 0u);
    EXPECT_GE(r1.metrics.blockCount, cfg.durationBlocks);
    EXPECT_EQ(r1.metrics.finalBlockHash, r2.metrics.finalBlockHash);
    EXPECT_EQ(r1.metrics.finalScores, r2.metrics.finalScores);

    // a different seed produces different traffic
    ScenarioConfig other = cfg;
    other.seed = 43;
    EXPECT_NE(run_scenario(other).metrics.finalBlockHash, r1.metrics.finalBlockHash);
}

TEST(ScenarioTest, QualityOrdersScores) {
    ScenarioConfig cfg = small_scenario();
    cfg.durationBlocks = 30;
    cfg.users.interactionRate = 1.0;
    const ScenarioResult r = run_scenario(cfg);

    const auto& scores = r.metrics.finalScores.at("prov-0");
    ASSERT_TRUE(scores.count("svc-a"));
    ASSERT_TRUE(scores.count("svc-b"));
    // svc-a delivers good experiences 90% of the time, svc-b 30%
    EXPECT_GT(scores.at("svc-a"), 0.7);
    EXPECT_LT(scores.at("svc-b"), 0.55);
    EXPECT_GT(scores.at("svc-a"), scores.at("svc-b"));
}

TEST(ScenarioTest, SummaryCarriesTheHeadlineFields) {
    const ScenarioResult r = run_scenario(small_scenario());
    const auto s = r.metrics.summary();
    EXPECT_TRUE(s.contains("blocks"));
    EXPECT_TRUE(s.contains("transactions"));
    EXPECT_TRUE(s.contains("finalBlockHash"));
    EXPECT_TRUE(s.contains("chainValid"));
    EXPECT_TRUE(s.contains("finalScores"));
    EXPECT_EQ(s["chainValid"], true);

    std::ostringstream csv;
    r.metrics.write_block_csv(csv);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "block,transactions,gasUsed,fees,events,pendingAfter");
}

TEST(ScenarioTest, BadMouthingDepressesTheTargetScore) {
    ScenarioConfig cfg = small_scenario();
    cfg.durationBlocks = 30;
    ScenarioConfig attacked = cfg;
    AttackConfig atk;
    atk.kind = AttackKind::BadMouthing;
    atk.target = "svc-a";
    atk.startBlock = 5;
    atk.intensity = 3.0;
    attacked.attacks = {atk};

    const double clean = run_scenario(cfg).metrics.finalScores.at("prov-0").at("svc-a");
    const ScenarioResult r = run_scenario(attacked);
    const double smeared = r.metrics.finalScores.at("prov-0").at("svc-a");

    EXPECT_LT(smeared, clean - 0.1);
    ASSERT_EQ(r.metrics.attacks.size(), 1u);
    EXPECT_EQ(r.metrics.attacks[0].kind, "badmouthing");
    EXPECT_GT(r.metrics.attacks[0].spend, 0u);
    EXPECT_GT(r.metrics.attacks[0].scoreDisplacement, 0.1);
}

TEST(ScenarioTest, AttackTrafficDoesNotDisturbHonestStreams) {
    // with per-actor engines, adding an attack must not change which
    // accesses honest users make; only scores and chain content differ
    ScenarioConfig cfg = small_scenario();
    ScenarioConfig attacked = cfg;
    AttackConfig atk;
    atk.kind = AttackKind::GoodMouthing;
    atk.target = "svc-b";
    atk.intensity = 2.0;
    attacked.attacks = {atk};

    const ScenarioResult clean = run_scenario(cfg);
    const ScenarioResult dirty = run_scenario(attacked);

    auto honest_interactions = [](const ScenarioResult& r) {
        std::vector<std::tuple<Address, Address>> out;
        EventFilter f;
        f.kind = EventKind::Interaction;
        for (const auto& e : r.node->ledger().query_events(f)) {
            const auto& p = std::get<InteractionEventPayload>(e.payload);
            if (p.user.rfind("user-", 0) == 0)
                out.emplace_back(p.user, p.resource);
        }
        return out;
    };
    EXPECT_EQ(honest_interactions(clean), honest_interactions(dirty));
}

TEST(ScenarioTest, SybilWaveInflatesAndGetsDetected) {
    ScenarioConfig cfg = small_scenario();
    cfg.durationBlocks = 40;
    cfg.services[1].quality = 0.2;  // a lousy service worth promoting

    TrustProviderConfig watching = cfg.providers[0];
    watching.detectors.shortLivedEnabled = true;
    watching.detectors.minLifetimeBlocks = 10;
    cfg.providers = {watching};

    ScenarioConfig attacked = cfg;
    AttackConfig atk;
    atk.kind = AttackKind::Sybil;
    atk.target = "svc-b";
    atk.startBlock = 25;
    atk.intensity = 4.0;
    atk.nClones = 20;
    attacked.attacks = {atk};

    const double clean = run_scenario(cfg).metrics.finalScores.at("prov-0").at("svc-b");
    const ScenarioResult r = run_scenario(attacked);
    const double pumped = r.metrics.finalScores.at("prov-0").at("svc-b");
    EXPECT_GT(pumped, clean + 0.1);

    // every clone leaves the narrow footprint the detector looks for
    const auto& reports = r.metrics.reports.at("prov-0");
    std::size_t shortLived = 0;
    for (const auto& rep : reports)
        if (rep.kind == DetectionKind::ShortLivedAccount &&
            rep.subject.rfind("sybil-", 0) == 0)
            ++shortLived;
    EXPECT_GE(shortLived, 15u);
    ASSERT_EQ(r.metrics.attacks.size(), 1u);
    EXPECT_GE(r.metrics.attacks[0].relatedReports, shortLived);
}

TEST(ScenarioTest, OnOffServiceOscillatesUnderLatestMechanism) {
    ScenarioConfig cfg = small_scenario();
    cfg.durationBlocks = 40;
    cfg.users.count = 6;
    cfg.users.interactionRate = 1.0;
    cfg.services = {{"svc-a", 1.0, 10}};
    cfg.providers[0].mechanism = "latest";

    ScenarioConfig flaky = cfg;
    AttackConfig atk;
    atk.kind = AttackKind::OnOff;
    atk.target = "svc-a";
    atk.startBlock = 1;
    atk.period = 5;
    flaky.attacks = {atk};

    const ScenarioResult steady = run_scenario(cfg);
    const ScenarioResult wobbly = run_scenario(flaky);

    auto swings = [](const ScenarioResult& r) {
        const auto& traj = r.metrics.trajectories.at("prov-0").at("svc-a");
        int flips = 0;
        for (std::size_t i = 1; i < traj.size(); ++i)
            if (traj[i].second != traj[i - 1].second)
                ++flips;
        return flips;
    };
    EXPECT_LE(swings(steady), 1);  // rises once to 1.0 and stays
    EXPECT_GE(swings(wobbly), 4);  // follows the on-off phases
    // the on-off pattern emits no transactions of its own
    ASSERT_EQ(wobbly.metrics.attacks.size(), 1u);
    EXPECT_EQ(wobbly.metrics.attacks[0].spend, 0u);
    EXPECT_TRUE(wobbly.metrics.attacks[0].accounts.empty());
}

TEST(FixtureTest, WorkedExampleScoresMatchHandComputation) {
    auto node = replay_fixture("worked-example");
    ASSERT_TRUE(node);
    EXPECT_TRUE(node->ledger().verify_chain().ok);

    EvidenceMap m = EvidenceMap::build(node->ledger().query_events());
    const auto mech = average_mechanism();
    EXPECT_NEAR(sigma_service(m, "printer-y1", std::nullopt, mech,
                              EvidenceSelection::uniform()).value,
                0.75, 1e-12);
    EXPECT_NEAR(sigma_service(m, "printer-y1", std::nullopt, mech,
                              EvidenceSelection::fresh_biased(0.5)).value,
                5.0 / 6.0, 1e-12);
    EXPECT_NEAR(sigma_service(m, "scanner-y3", std::nullopt, mech,
                              EvidenceSelection::uniform()).value,
                1.0, 1e-12);

    // the dave review aimed at a nonexistent interaction must have reverted
    bool sawRevert = false;
    for (const auto& b : node->ledger().blocks())
        for (const auto& tx : b.transactions)
            if (tx.status == TxStatus::Reverted && tx.error == ExecError::NoSuchInteraction)
                sawRevert = true;
    EXPECT_TRUE(sawRevert);
    EXPECT_TRUE(scan_feedback_backing(node->ledger().blocks()).empty());
}

TEST(FixtureTest, Fig2AliasAndUnknownName) {
    auto a = replay_fixture("fig2");
    auto b = replay_fixture("worked-example");
    EXPECT_EQ(a->ledger().blocks().back().hash, b->ledger().blocks().back().hash);
    EXPECT_THROW(replay_fixture("no-such-fixture"), UnknownFixture);
}

TEST(FixtureTest, AlternatingStreamHasExactShape) {
    auto node = replay_fixture("alternating-stream", 10);
    EvidenceMap m = EvidenceMap::build(node->ledger().query_events());
    const auto& uids = m.interactions_of_service("svc-alt");
    ASSERT_EQ(uids.size(), 10u);
    for (Uid u : uids) {
        const auto& fb = m.feedbacks_of(u);
        ASSERT_EQ(fb.size(), 1u);
        const std::int64_t r = m.review(fb[0])->rating;
        EXPECT_EQ(r, u % 2 == 1 ? 5 : 0) << "uid " << u;
    }
}

TEST(FixtureTest, ScenarioRunnerAcceptsFixtures) {
    ScenarioConfig cfg;
    cfg.fixture = "worked-example";
    TrustProviderConfig prov;
    prov.address = "prov-0";
    prov.selection = "uniform";
    cfg.providers = {prov};

    const ScenarioResult r = run_scenario(cfg);
    EXPECT_TRUE(r.metrics.chainValid);
    EXPECT_TRUE(r.metrics.feedbackBackingClean);
    EXPECT_NEAR(r.metrics.finalScores.at("prov-0").at("printer-y1"), 0.75, 1e-12);
}

TEST(BenchTest, ThroughputScalesWithWorkload) {
    const auto rows = bench_throughput({10, 100, 1000}, TxKind::ReviewSubmission);
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_GT(rows[i].blocks, 0u);
        EXPECT_GT(rows[i].tps, 0.0);
        EXPECT_GT(rows[i].avgFeePerTx, 0.0);
        if (i > 0) {
            EXPECT_GE(rows[i].tps, rows[i - 1].tps);
            EXPECT_GE(rows[i].avgFeePerTx, rows[i - 1].avgFeePerTx);  // deeper pool, pricier gas
        }
    }
    // 1000 reviews fit one block (gas limit admits 5000), so simulated
    // throughput is workload per block interval
    EXPECT_EQ(rows[2].blocks, 1u);
    EXPECT_NEAR(rows[2].tps, 1000.0 / 12.0, 1e-9);
}

TEST(BenchTest, GasLimitSplitsOversizedWorkloads) {
    const auto rows = bench_throughput({10'000}, TxKind::ReviewSubmission);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].blocks, 2u);  // 5000 reviews per block at the default limit
    EXPECT_NEAR(rows[0].avgTxPerBlock, 5000.0, 1e-9);
}

TEST(BenchTest, CsvHasOneRowPerWorkload) {
    const auto rows = bench_throughput({10, 100}, TxKind::AccessRequest);
    std::ostringstream csv;
    write_bench_csv(rows, csv);
    std::istringstream lines(csv.str());
    std::string line;
    int n = 0;
    while (std::getline(lines, line))
        ++n;
    EXPECT_EQ(n, 3);  // header + 2 rows
}

}  // namespace
}  // namespace trustledger
