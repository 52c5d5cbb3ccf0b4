// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/providers.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace trustledger {

class ConfigError : public Error {
    using Error::Error;
};

class UnknownFixture : public Error {
    using Error::Error;
};

// Independent engine per (seed, role, index). Actors draw only from their
// own engine, so adding or removing one actor never shifts another actor's
// random choices between runs.
std::mt19937_64 actor_engine(std::uint64_t seed, std::string_view role, std::uint64_t index);

struct ServiceSpec {
    Address id;
    double quality = 0.9;  // chance an access is a good experience
    TokenAmount price = 10;
};

struct UserPopulation {
    std::size_t count = 10;
    double interactionRate = 0.5;      // accesses per user per block
    double feedbackProbability = 1.0;  // chance a sealed access gets reviewed
    double queryRate = 0.0;            // score queries per user per block
    TokenAmount initialBalance = 100'000'000;
};

enum class AttackKind : std::uint8_t {
    BadMouthing,    // one account floods negative reviews at the target
    GoodMouthing,   // one account floods positive reviews
    Collusion,      // several coordinated accounts flood negative reviews
    Sybil,          // a wave of fresh single-use accounts, positive reviews
    OnOff,          // the target service alternates good and bad phases
    Opportunistic,  // the target service turns bad at a switch block
};

const char* to_string(AttackKind k);
AttackKind attack_kind_from_string(const std::string& s);

struct AttackConfig {
    AttackKind kind = AttackKind::BadMouthing;
    Address target;                  // service being smeared, promoted, or misbehaving
    std::uint64_t startBlock = 1;
    double intensity = 1.0;          // actions per block (fractions accumulate)
    std::uint32_t nAttackers = 1;    // collusion group size
    std::uint32_t nClones = 0;       // sybil identity supply
    std::uint64_t period = 5;        // on-off phase length in blocks
    std::uint64_t switchBlock = 0;   // opportunistic turn-coat block
    TokenAmount budget = 1'000'000'000;  // funding per attacker account
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::uint64_t durationBlocks = 50;
    UserPopulation users;
    std::vector<ServiceSpec> services;
    std::vector<TrustProviderConfig> providers;
    std::vector<AttackConfig> attacks;
    LedgerConfig ledger;
    ContractConfig contracts;

    // When set, replaces stochastic traffic with a scripted chain; users,
    // services and attacks are ignored, providers still analyze the result.
    std::optional<std::string> fixture;
    std::uint64_t fixtureParam = 0;

    static ScenarioConfig from_json(const nlohmann::json& j);  // throws ConfigError
    nlohmann::ordered_json to_json() const;
};

struct BlockMetrics {
    std::uint64_t block = 0;
    std::size_t txCount = 0;
    Gas gasUsed = 0;
    TokenAmount fees = 0;
    std::size_t events = 0;
    std::size_t pendingAfter = 0;
};

struct AttackMetrics {
    std::string kind;
    Address target;
    std::vector<Address> accounts;   // accounts the attack operated
    TokenAmount spend = 0;           // tokens those accounts burned in total
    double scoreDisplacement = 0.0;  // max target-score shift vs the attack-free run
    std::uint64_t relatedReports = 0;
};

struct MetricsBundle {
    std::vector<BlockMetrics> perBlock;
    // provider -> service -> (block, score) samples
    std::map<Address, std::map<Address, std::vector<std::pair<std::uint64_t, double>>>>
        trajectories;
    std::map<Address, std::map<Address, double>> finalScores;
    std::map<Address, std::vector<DetectionReport>> reports;  // per provider
    std::vector<AttackMetrics> attacks;
    std::vector<Address> userAccounts;
    bool chainValid = false;
    bool feedbackBackingClean = false;
    std::uint64_t blockCount = 0;
    std::uint64_t txCount = 0;
    TokenAmount totalFees = 0;
    std::string finalBlockHash;

    nlohmann::ordered_json summary() const;
    void write_block_csv(std::ostream& out) const;
};

struct ScenarioResult {
    MetricsBundle metrics;
    std::unique_ptr<Node> node;  // final chain and state
};

// Runs a full scenario: funds the actors, drives user and attacker traffic
// block by block, feeds providers, then audits the chain. When attacks are
// configured, the same scenario is re-run internally without them to measure
// how far each attack actually moved the target's score.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Scripted chains with known shape, for tests and demos:
//   "worked-example" (alias "fig2")  two services, three interactions, four
//                                    feedbacks, one rejected dangling review
//   "alternating-stream"             param-many interactions of one service,
//                                    ratings strictly alternating good/bad
std::unique_ptr<Node> replay_fixture(const std::string& name, std::uint64_t param = 0);

struct BenchRow {
    std::size_t workload = 0;
    std::uint64_t blocks = 0;  // blocks needed to drain the workload
    double totalTimeSeconds = 0.0;
    double tps = 0.0;
    double avgTxPerBlock = 0.0;
    double avgFeePerTx = 0.0;
};

// Measures simulated-clock throughput: enqueue `workload` transactions of
// one kind at once, seal blocks until drained. Review workloads run against
// 11,110 pre-seeded interactions so every review references a real uid.
std::vector<BenchRow> bench_throughput(const std::vector<std::size_t>& workloads, TxKind kind,
                                       const LedgerConfig& lc = {});

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace trustledger
