// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
//
// Command line front end. Exit codes: 0 success, 2 configuration or input
// problem, 3 scenario finished but the feedback-backing audit found
// violations, 4 chain verification failure.
#include <trustledger/scoring.hpp>
#include <trustledger/serialize.hpp>
#include <trustledger/sim.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace trustledger;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBackingViolation = 3;
constexpr int kExitVerifyFailed = 4;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path);
    return out;
}

ChainDump load_dump(const std::string& path) {
    std::ifstream in = open_input(path);
    return load_chain(in);
}

std::vector<Uid> parse_uid_list(const std::string& text) {
    std::vector<Uid> uids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad uid in context list: " + item);
        }
        if (used != item.size())
            throw ConfigError("bad uid in context list: " + item);
        uids.push_back(v);
    }
    return uids;
}

// Seed precedence: explicit --seed flag, then TRUSTLEDGER_SEED, then the
// value in the config file.
std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("TRUSTLEDGER_SEED");
    if (v == nullptr || *v == '\0')
        return std::nullopt;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("TRUSTLEDGER_SEED is not a number");
    }
}

struct RunArgs {
    std::string configPath;
    std::optional<std::uint64_t> seed;
    std::string outDir;
};

int cmd_run(const RunArgs& args) {
    std::ifstream in = open_input(args.configPath);
    nlohmann::json cj;
    try {
        cj = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    ScenarioConfig cfg = ScenarioConfig::from_json(cj);
    if (auto s = env_seed())
        cfg.seed = *s;
    if (args.seed)
        cfg.seed = *args.seed;

    const ScenarioResult result = run_scenario(cfg);
    const nlohmann::ordered_json summary = result.metrics.summary();

    if (!args.outDir.empty()) {
        std::filesystem::create_directories(args.outDir);
        const std::filesystem::path dir(args.outDir);
        open_output((dir / "summary.json").string()) << summary.dump(2) << '\n';
        {
            auto f = open_output((dir / "blocks.csv").string());
            result.metrics.write_block_csv(f);
        }
        {
            auto f = open_output((dir / "chain.jsonl").string());
            dump_chain(result.node->ledger(), f);
        }
    }
    std::cout << summary.dump(2) << '\n';

    if (!result.metrics.chainValid)
        return kExitVerifyFailed;
    if (!result.metrics.feedbackBackingClean)
        return kExitBackingViolation;
    return kExitOk;
}

struct BenchArgs {
    std::string workloads = "10,100,1000,10000";
    std::string kind = "review";
    std::string outPath;
};

int cmd_bench(const BenchArgs& args) {
    std::vector<std::size_t> workloads;
    for (Uid v : parse_uid_list(args.workloads))
        workloads.push_back(static_cast<std::size_t>(v));
    if (workloads.empty())
        throw ConfigError("no workloads given");

    TxKind kind;
    if (args.kind == "review")
        kind = TxKind::ReviewSubmission;
    else if (args.kind == "access")
        kind = TxKind::AccessRequest;
    else if (args.kind == "query")
        kind = TxKind::ScoreQuery;
    else
        throw ConfigError("unknown bench kind (want review, access, or query): " + args.kind);

    const std::vector<BenchRow> rows = bench_throughput(workloads, kind);
    if (!args.outPath.empty()) {
        auto f = open_output(args.outPath);
        write_bench_csv(rows, f);
    }
    write_bench_csv(rows, std::cout);
    return kExitOk;
}

struct ScoreArgs {
    std::string chainPath;
    std::string service;
    std::string mechanism = "average";
    std::string selection = "uniform";
    std::string context;
    double emptyValue = 0.5;
    std::int64_t threshold = 3;
    std::uint64_t cap = 1'000'000;
};

int cmd_score(const ScoreArgs& args) {
    const Ledger led = ledger_from_dump(load_dump(args.chainPath));
    const VerifyResult vr = led.verify_chain();
    if (!vr.ok) {
        std::cerr << "chain verification failed at block " << vr.blockNumber << ": " << vr.reason
                  << '\n';
        return kExitVerifyFailed;
    }

    const EvidenceMap map = EvidenceMap::build(led.query_events());
    ScoringMechanism mech = [&] {
        try {
            return parse_mechanism(args.mechanism, RatingProjection{args.threshold},
                                   args.emptyValue);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();
    EvidenceSelection sel = [&] {
        try {
            return parse_selection(args.selection);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();

    std::optional<std::vector<Uid>> subset;
    if (!args.context.empty())
        subset = parse_uid_list(args.context);

    const ScoreResult r = sigma_service(map, args.service, subset, mech, sel, args.cap);
    std::printf("%.6f\n", r.value);
    std::fprintf(stderr, "service=%s mechanism=%s selection=%s interactions=%zu reviewed=%zu traces=%llu\n",
                 args.service.c_str(), mech.name().c_str(), sel.name().c_str(), r.contextSize,
                 r.domainSize, static_cast<unsigned long long>(r.traceCount));
    return kExitOk;
}

int cmd_verify(const std::string& chainPath) {
    const Ledger led = ledger_from_dump(load_dump(chainPath));
    const VerifyResult vr = led.verify_chain();
    if (!vr.ok) {
        std::cout << "FAIL block " << vr.blockNumber << ": " << vr.reason << '\n';
        return kExitVerifyFailed;
    }
    std::cout << "OK " << led.blocks().size() << " blocks\n";
    return kExitOk;
}

struct FixtureArgs {
    std::string name = "worked-example";
    std::uint64_t param = 0;
    std::string outPath;
};

int cmd_fixture(const FixtureArgs& args) {
    const std::unique_ptr<Node> node = replay_fixture(args.name, args.param);
    if (!args.outPath.empty()) {
        auto f = open_output(args.outPath);
        dump_chain(node->ledger(), f);
    } else {
        dump_chain(node->ledger(), std::cout);
    }
    return kExitOk;
}

struct ExportArgs {
    std::string chainPath;
    std::string format = "csv";
    std::string outPath;
};

int cmd_export(const ExportArgs& args) {
    const ChainDump dump = load_dump(args.chainPath);
    auto emit = [&](std::ostream& out) {
        if (args.format == "csv") {
            export_events_csv(dump.blocks, out);
        } else if (args.format == "jsonl") {
            for (const Block& b : dump.blocks)
                for (const LedgerEvent& e : b.events)
                    out << event_to_json(e).dump() << '\n';
        } else {
            throw ConfigError("unknown export format (want csv or jsonl): " + args.format);
        }
    };
    if (!args.outPath.empty()) {
        auto f = open_output(args.outPath);
        emit(f);
    } else {
        emit(std::cout);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evidence-based trust scoring over a simulated block ledger"};
    app.require_subcommand(1);

    std::function<int()> action;

    RunArgs runArgs;
    auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
    run->add_option("--config", runArgs.configPath, "scenario config file")->required();
    std::uint64_t seedFlag = 0;
    auto* seedOpt = run->add_option("--seed", seedFlag, "override the scenario seed");
    run->add_option("--out", runArgs.outDir, "directory for summary.json, blocks.csv, chain.jsonl");
    run->callback([&] {
        if (*seedOpt)
            runArgs.seed = seedFlag;
        action = [&] { return cmd_run(runArgs); };
    });

    BenchArgs benchArgs;
    auto* bench = app.add_subcommand("bench", "measure simulated throughput");
    bench->add_option("--workloads", benchArgs.workloads, "comma separated transaction counts");
    bench->add_option("--kind", benchArgs.kind, "transaction kind: review, access, query");
    bench->add_option("--out", benchArgs.outPath, "also write the CSV here");
    bench->callback([&] { action = [&] { return cmd_bench(benchArgs); }; });

    ScoreArgs scoreArgs;
    auto* score = app.add_subcommand("score", "score a service from a chain dump");
    score->add_option("--chain", scoreArgs.chainPath, "chain dump (JSONL)")->required();
    score->add_option("--service", scoreArgs.service, "service address")->required();
    score->add_option("--mechanism", scoreArgs.mechanism, "average or latest");
    score->add_option("--selection", scoreArgs.selection,
                      "deterministic, uniform, fresh(q), geometric(q)");
    score->add_option("--context", scoreArgs.context, "restrict to these interaction uids");
    score->add_option("--empty-value", scoreArgs.emptyValue, "score of an empty context");
    score->add_option("--threshold", scoreArgs.threshold, "rating threshold for a positive");
    score->add_option("--cap", scoreArgs.cap, "maximal-trace enumeration cap");
    score->callback([&] { action = [&] { return cmd_score(scoreArgs); }; });

    std::string verifyChain;
    auto* verify = app.add_subcommand("verify", "check the hash links of a chain dump");
    verify->add_option("--chain", verifyChain, "chain dump (JSONL)")->required();
    verify->callback([&] { action = [&] { return cmd_verify(verifyChain); }; });

    FixtureArgs fixtureArgs;
    auto* fixture = app.add_subcommand("fixture", "emit a scripted chain as a dump");
    fixture->add_option("--name", fixtureArgs.name,
                        "worked-example (alias fig2) or alternating-stream");
    fixture->add_option("--param", fixtureArgs.param, "fixture size parameter");
    fixture->add_option("--out", fixtureArgs.outPath, "write the dump here instead of stdout");
    fixture->callback([&] { action = [&] { return cmd_fixture(fixtureArgs); }; });

    ExportArgs exportArgs;
    auto* exp = app.add_subcommand("export", "flatten a dump's events to a table");
    exp->add_option("--chain", exportArgs.chainPath, "chain dump (JSONL)")->required();
    exp->add_option("--format", exportArgs.format, "csv or jsonl");
    exp->add_option("--out", exportArgs.outPath, "write here instead of stdout");
    exp->callback([&] { action = [&] { return cmd_export(exportArgs); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints the message or the help text
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        return action ? action() : kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UnknownFixture& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
