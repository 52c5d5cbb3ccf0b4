// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/sim.hpp>

#include <trustledger/serialize.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace trustledger {

using nlohmann::json;
using nlohmann::ordered_json;

std::mt19937_64 actor_engine(std::uint64_t seed, std::string_view role, std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the role label
    for (unsigned char c : role)
        h = (h ^ c) * 1099511628211ULL;
    std::uint64_t state = seed ^ h;
    state += index * 0x9e3779b97f4a7c15ULL;
    const std::uint64_t a = splitmix64(state);
    const std::uint64_t b = splitmix64(state);
    return std::mt19937_64(a ^ (b << 1));
}

const char* to_string(AttackKind k) {
    switch (k) {
    case AttackKind::BadMouthing: return "badmouthing";
    case AttackKind::GoodMouthing: return "goodmouthing";
    case AttackKind::Collusion: return "collusion";
    case AttackKind::Sybil: return "sybil";
    case AttackKind::OnOff: return "onoff";
    case AttackKind::Opportunistic: return "opportunistic";
    }
    return "unknown";
}

AttackKind attack_kind_from_string(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(AttackKind::Opportunistic); ++k)
        if (s == to_string(static_cast<AttackKind>(k)))
            return static_cast<AttackKind>(k);
    throw ConfigError("unknown attack kind: " + s);
}

// --- configuration ------------------------------------------------------------

namespace {

RecomputePolicy policy_from_string(const std::string& s) {
    if (s == "everyBlock")
        return RecomputePolicy::EveryBlock;
    if (s == "everyN")
        return RecomputePolicy::EveryNBlocks;
    if (s == "onDemand")
        return RecomputePolicy::OnDemand;
    throw ConfigError("unknown recompute policy: " + s);
}

const char* to_string(RecomputePolicy p) {
    switch (p) {
    case RecomputePolicy::EveryBlock: return "everyBlock";
    case RecomputePolicy::EveryNBlocks: return "everyN";
    case RecomputePolicy::OnDemand: return "onDemand";
    }
    return "unknown";
}

TrustProviderConfig provider_from_json(const json& j) {
    TrustProviderConfig p;
    p.address = j.at("address");
    p.queryFee = j.value("queryFee", p.queryFee);
    p.mechanism = j.value("mechanism", p.mechanism);
    p.selection = j.value("selection", p.selection);
    p.emptyTraceValue = j.value("emptyTraceValue", p.emptyTraceValue);
    p.ratingThreshold = j.value("ratingThreshold", p.ratingThreshold);
    p.policy = policy_from_string(j.value("policy", "everyBlock"));
    p.everyN = j.value("everyN", p.everyN);
    p.updateEpsilon = j.value("updateEpsilon", p.updateEpsilon);
    p.excludeFlagged = j.value("excludeFlagged", p.excludeFlagged);
    p.enumerationCap = j.value("enumerationCap", p.enumerationCap);
    if (j.contains("detectors")) {
        const json& d = j.at("detectors");
        if (d.contains("spike")) {
            p.detectors.spikeEnabled = true;
            p.detectors.spikeWindow = d.at("spike").value("window", p.detectors.spikeWindow);
            p.detectors.spikeThreshold =
                d.at("spike").value("threshold", p.detectors.spikeThreshold);
        }
        if (d.contains("serialNegative")) {
            p.detectors.serialEnabled = true;
            p.detectors.serialMinRun =
                d.at("serialNegative").value("minRun", p.detectors.serialMinRun);
        }
        if (d.contains("shortLived")) {
            p.detectors.shortLivedEnabled = true;
            p.detectors.minLifetimeBlocks =
                d.at("shortLived").value("minLifetimeBlocks", p.detectors.minLifetimeBlocks);
        }
    }
    // Fail configuration time, not query time, on bad names.
    try {
        parse_mechanism(p.mechanism);
        parse_selection(p.selection);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("provider ") + p.address + ": " + e.what());
    }
    return p;
}

ordered_json provider_to_json(const TrustProviderConfig& p) {
    ordered_json j;
    j["address"] = p.address;
    j["queryFee"] = p.queryFee;
    j["mechanism"] = p.mechanism;
    j["selection"] = p.selection;
    j["emptyTraceValue"] = p.emptyTraceValue;
    j["ratingThreshold"] = p.ratingThreshold;
    j["policy"] = to_string(p.policy);
    j["everyN"] = p.everyN;
    j["updateEpsilon"] = p.updateEpsilon;
    j["excludeFlagged"] = p.excludeFlagged;
    j["enumerationCap"] = p.enumerationCap;
    ordered_json d = ordered_json::object();
    if (p.detectors.spikeEnabled)
        d["spike"] = {{"window", p.detectors.spikeWindow},
                      {"threshold", p.detectors.spikeThreshold}};
    if (p.detectors.serialEnabled)
        d["serialNegative"] = {{"minRun", p.detectors.serialMinRun}};
    if (p.detectors.shortLivedEnabled)
        d["shortLived"] = {{"minLifetimeBlocks", p.detectors.minLifetimeBlocks}};
    if (!d.empty())
        j["detectors"] = d;
    return j;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    try {
        ScenarioConfig c;
        c.seed = j.value("seed", c.seed);
        c.durationBlocks = j.value("durationBlocks", c.durationBlocks);
        if (j.contains("users")) {
            const json& u = j.at("users");
            c.users.count = u.value("count", c.users.count);
            c.users.interactionRate = u.value("interactionRate", c.users.interactionRate);
            c.users.feedbackProbability =
                u.value("feedbackProbability", c.users.feedbackProbability);
            c.users.queryRate = u.value("queryRate", c.users.queryRate);
            c.users.initialBalance = u.value("initialBalance", c.users.initialBalance);
        }
        for (const json& s : j.value("services", json::array())) {
            ServiceSpec spec;
            spec.id = s.at("id");
            spec.quality = s.value("quality", spec.quality);
            spec.price = s.value("price", spec.price);
            if (spec.quality < 0.0 || spec.quality > 1.0)
                throw ConfigError("service quality must lie in [0, 1]: " + spec.id);
            c.services.push_back(std::move(spec));
        }
        for (const json& p : j.value("providers", json::array()))
            c.providers.push_back(provider_from_json(p));
        for (const json& a : j.value("attacks", json::array())) {
            AttackConfig ac;
            ac.kind = attack_kind_from_string(a.at("kind"));
            ac.target = a.at("target");
            ac.startBlock = a.value("startBlock", ac.startBlock);
            ac.intensity = a.value("intensity", ac.intensity);
            ac.nAttackers = a.value("nAttackers", ac.nAttackers);
            ac.nClones = a.value("nClones", ac.nClones);
            ac.period = a.value("period", ac.period);
            ac.switchBlock = a.value("switchBlock", ac.switchBlock);
            ac.budget = a.value("budget", ac.budget);
            c.attacks.push_back(std::move(ac));
        }
        if (j.contains("ledger")) {
            const json& l = j.at("ledger");
            c.ledger.blockInterval = l.value("blockInterval", c.ledger.blockInterval);
            c.ledger.blockGasLimit = l.value("blockGasLimit", c.ledger.blockGasLimit);
            c.ledger.baseGasPrice = l.value("baseGasPrice", c.ledger.baseGasPrice);
        }
        if (j.contains("contracts")) {
            const json& cc = j.at("contracts");
            c.contracts.ratingMax = cc.value("ratingMax", c.contracts.ratingMax);
            c.contracts.ratingThreshold =
                cc.value("ratingThreshold", c.contracts.ratingThreshold);
            c.contracts.emptyScore = cc.value("emptyScore", c.contracts.emptyScore);
        }
        if (j.contains("fixture") && !j.at("fixture").is_null()) {
            c.fixture = j.at("fixture").get<std::string>();
            c.fixtureParam = j.value("fixtureParam", c.fixtureParam);
        }

        if (c.durationBlocks == 0)
            throw ConfigError("durationBlocks must be positive");
        if (!c.fixture && c.services.empty())
            throw ConfigError("at least one service is required");
        for (const AttackConfig& a : c.attacks) {
            const bool known = std::any_of(c.services.begin(), c.services.end(),
                                           [&](const ServiceSpec& s) { return s.id == a.target; });
            if (!known)
                throw ConfigError("attack target is not a configured service: " + a.target);
            if (a.intensity < 0.0)
                throw ConfigError("attack intensity must be non-negative");
            if (a.kind == AttackKind::Collusion && a.nAttackers == 0)
                throw ConfigError("collusion needs at least one attacker");
            if (a.kind == AttackKind::Sybil && a.nClones == 0)
                throw ConfigError("sybil needs at least one clone");
            if (a.kind == AttackKind::OnOff && a.period == 0)
                throw ConfigError("onoff needs a positive period");
            if (a.kind == AttackKind::Opportunistic && a.switchBlock == 0)
                throw ConfigError("opportunistic needs a positive switchBlock");
        }
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad scenario config: ") + e.what());
    }
}

ordered_json ScenarioConfig::to_json() const {
    ordered_json j;
    j["seed"] = seed;
    j["durationBlocks"] = durationBlocks;
    j["users"] = {{"count", users.count},
                  {"interactionRate", users.interactionRate},
                  {"feedbackProbability", users.feedbackProbability},
                  {"queryRate", users.queryRate},
                  {"initialBalance", users.initialBalance}};
    j["services"] = ordered_json::array();
    for (const ServiceSpec& s : services)
        j["services"].push_back({{"id", s.id}, {"quality", s.quality}, {"price", s.price}});
    j["providers"] = ordered_json::array();
    for (const TrustProviderConfig& p : providers)
        j["providers"].push_back(provider_to_json(p));
    j["attacks"] = ordered_json::array();
    for (const AttackConfig& a : attacks) {
        ordered_json aj;
        aj["kind"] = to_string(a.kind);
        aj["target"] = a.target;
        aj["startBlock"] = a.startBlock;
        aj["intensity"] = a.intensity;
        aj["nAttackers"] = a.nAttackers;
        aj["nClones"] = a.nClones;
        aj["period"] = a.period;
        aj["switchBlock"] = a.switchBlock;
        aj["budget"] = a.budget;
        j["attacks"].push_back(std::move(aj));
    }
    j["ledger"] = {{"blockInterval", ledger.blockInterval},
                   {"blockGasLimit", ledger.blockGasLimit},
                   {"baseGasPrice", ledger.baseGasPrice}};
    j["contracts"] = {{"ratingMax", contracts.ratingMax},
                      {"ratingThreshold", contracts.ratingThreshold},
                      {"emptyScore", contracts.emptyScore}};
    if (fixture) {
        j["fixture"] = *fixture;
        j["fixtureParam"] = fixtureParam;
    }
    return j;
}

// --- fixtures -----------------------------------------------------------------

namespace {

std::unique_ptr<Node> make_worked_example() {
    auto node = std::make_unique<Node>();
    Ledger& led = node->ledger();
    ContractMachine& cm = node->contracts();

    for (const char* svc : {"printer-y1", "scanner-y3"}) {
        led.create_account(svc, 0);
        cm.register_resource(svc, 10, svc);
    }
    for (const char* user : {"alice", "bob", "carol", "dave"})
        led.create_account(user, 10'000'000);

    auto access = [&](const char* user, const char* svc) {
        Transaction tx;
        tx.sender = user;
        tx.payload = AccessRequestPayload{svc, 10};
        led.submit_transaction(std::move(tx));
    };
    auto review = [&](const char* user, Uid uid, std::int64_t rating) {
        Transaction tx;
        tx.sender = user;
        tx.payload = ReviewSubmissionPayload{user, uid, rating};
        led.submit_transaction(std::move(tx));
    };

    // Three interactions: two with the printer, one with the scanner.
    access("alice", "printer-y1");  // uid 1
    access("bob", "printer-y1");    // uid 2
    access("carol", "scanner-y3");  // uid 3
    node->produce_block(12);

    // Alice reviews twice (a correction), the others once. Dave never
    // interacted, so his review is rejected and leaves no event.
    review("alice", 1, 0);
    review("alice", 1, 5);
    review("bob", 2, 5);
    review("carol", 3, 5);
    review("dave", 99, 5);
    node->produce_block(24);
    return node;
}

std::unique_ptr<Node> make_alternating_stream(std::uint64_t n) {
    if (n == 0)
        n = 10;
    auto node = std::make_unique<Node>();
    Ledger& led = node->ledger();
    node->contracts().register_resource("svc-alt", 1, "svc-alt");
    led.create_account("svc-alt", 0);
    led.create_account("streamer", 2'000'000'000'000ULL);

    std::uint64_t now = 0;
    auto drain = [&] {
        while (led.pending_count() > 0)
            node->produce_block(now += 12);
    };

    for (std::uint64_t k = 0; k < n; ++k) {
        Transaction tx;
        tx.sender = "streamer";
        tx.payload = AccessRequestPayload{"svc-alt", 1};
        if (!led.submit_transaction(std::move(tx)).accepted)
            throw std::logic_error("alternating-stream: access rejected");
        if (led.pending_count() >= 4000)
            drain();
    }
    drain();

    // Ratings strictly alternate starting positive: uid 1 good, uid 2 bad.
    const std::int64_t top = node->contracts().config().ratingMax;
    for (std::uint64_t uid = 1; uid <= n; ++uid) {
        Transaction tx;
        tx.sender = "streamer";
        tx.payload = ReviewSubmissionPayload{"streamer", uid, uid % 2 == 1 ? top : 0};
        if (!led.submit_transaction(std::move(tx)).accepted)
            throw std::logic_error("alternating-stream: review rejected");
        if (led.pending_count() >= 4000)
            drain();
    }
    drain();
    return node;
}

}  // namespace

std::unique_ptr<Node> replay_fixture(const std::string& name, std::uint64_t param) {
    if (name == "worked-example" || name == "fig2")
        return make_worked_example();
    if (name == "alternating-stream")
        return make_alternating_stream(param);
    throw UnknownFixture("no fixture named " + name);
}

// --- scenario -----------------------------------------------------------------

namespace {

struct PendingReview {
    Uid uid = 0;
    Address service;
    std::uint64_t accessBlock = 0;
};

struct UserState {
    Address addr;
    std::mt19937_64 rng;
    std::vector<PendingReview> queue;
};

struct AttackState {
    const AttackConfig* cfg = nullptr;
    std::vector<Address> accounts;
    std::map<Address, std::vector<PendingReview>> queues;
    double carry = 0.0;
    std::size_t roundRobin = 0;
    std::uint32_t nextClone = 0;
};

double effective_quality(const ScenarioConfig& cfg, const Address& service,
                         std::uint64_t block) {
    double q = 0.9;
    for (const ServiceSpec& s : cfg.services)
        if (s.id == service)
            q = s.quality;
    for (const AttackConfig& a : cfg.attacks) {
        if (a.target != service)
            continue;
        if (a.kind == AttackKind::OnOff && block >= a.startBlock) {
            const std::uint64_t phase = ((block - a.startBlock) / a.period) % 2;
            if (phase == 0)
                q = 0.0;  // misbehaving phase comes first
        } else if (a.kind == AttackKind::Opportunistic && block >= a.switchBlock) {
            q = 0.0;
        }
    }
    return q;
}

TokenAmount service_price(const ScenarioConfig& cfg, const Address& service) {
    for (const ServiceSpec& s : cfg.services)
        if (s.id == service)
            return s.price;
    return 0;
}

void attack_act(AttackState& st, std::uint64_t t, const ScenarioConfig& cfg, Ledger& led) {
    const AttackConfig& a = *st.cfg;
    if (a.kind == AttackKind::OnOff || a.kind == AttackKind::Opportunistic)
        return;  // these act through service quality, not transactions
    if (t < a.startBlock)
        return;

    const bool praise = a.kind == AttackKind::GoodMouthing || a.kind == AttackKind::Sybil;
    const std::int64_t rating = praise ? cfg.contracts.ratingMax : 0;
    for (auto& [account, queue] : st.queues) {
        for (const PendingReview& pr : queue) {
            Transaction tx;
            tx.sender = account;
            tx.payload = ReviewSubmissionPayload{account, pr.uid, rating};
            led.submit_transaction(std::move(tx));
        }
        queue.clear();
    }

    st.carry += a.intensity;
    auto actions = static_cast<std::uint64_t>(st.carry);
    st.carry -= static_cast<double>(actions);
    const TokenAmount price = service_price(cfg, a.target);
    for (std::uint64_t i = 0; i < actions; ++i) {
        Address account;
        switch (a.kind) {
        case AttackKind::BadMouthing:
        case AttackKind::GoodMouthing:
            account = st.accounts.front();
            break;
        case AttackKind::Collusion:
            account = st.accounts[st.roundRobin++ % st.accounts.size()];
            break;
        case AttackKind::Sybil:
            if (st.nextClone >= st.accounts.size())
                return;  // identity supply exhausted
            account = st.accounts[st.nextClone++];
            break;
        default:
            return;
        }
        Transaction tx;
        tx.sender = account;
        tx.payload = AccessRequestPayload{a.target, price};
        led.submit_transaction(std::move(tx));
    }
}

ScenarioResult run_fixture_scenario(const ScenarioConfig& cfg) {
    ScenarioResult result;
    result.node = replay_fixture(*cfg.fixture, cfg.fixtureParam);
    Ledger& led = result.node->ledger();
    MetricsBundle& m = result.metrics;

    // Providers analyze the scripted chain read-only: no update pushes, so
    // the fixture's block content stays exactly as scripted.
    std::vector<std::unique_ptr<TrustProvider>> provs;
    for (const TrustProviderConfig& pc : cfg.providers)
        provs.push_back(std::make_unique<TrustProvider>(pc));

    for (const Block& b : led.blocks()) {
        for (auto& p : provs)
            p->ingest_block(b);
        if (b.number == 0)
            continue;
        TokenAmount fees = 0;
        for (const Transaction& tx : b.transactions)
            fees += tx.fee;
        m.perBlock.push_back(
            {b.number, b.transactions.size(), b.gasUsed, fees, b.events.size(), 0});
        m.txCount += b.transactions.size();
        m.totalFees += fees;
    }

    for (auto& p : provs) {
        const Address& addr = p->config().address;
        m.reports[addr] = p->run_detectors();
        m.trajectories[addr] = p->trajectories();
        for (const Address& svc : p->evidence().services())
            m.finalScores[addr][svc] = p->answer_query(svc);
    }

    m.chainValid = led.verify_chain().ok;
    m.feedbackBackingClean = scan_feedback_backing(led.blocks()).empty();
    m.blockCount = led.blocks().size() - 1;
    m.finalBlockHash = to_hex(led.last_block().hash);
    return result;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    if (cfg.fixture)
        return run_fixture_scenario(cfg);
    if (cfg.services.empty())
        throw ConfigError("at least one service is required");

    ScenarioResult result;
    result.node = std::make_unique<Node>(cfg.ledger, cfg.contracts);
    Node& node = *result.node;
    Ledger& led = node.ledger();
    MetricsBundle& m = result.metrics;

    for (const ServiceSpec& s : cfg.services) {
        led.create_account(s.id, 0);
        node.contracts().register_resource(s.id, s.price, s.id);
    }

    std::vector<UserState> users;
    std::map<Address, std::size_t> userIndex;
    for (std::size_t i = 0; i < cfg.users.count; ++i) {
        Address addr = "user-" + std::to_string(i + 1);
        led.create_account(addr, cfg.users.initialBalance);
        userIndex[addr] = users.size();
        users.push_back({addr, actor_engine(cfg.seed, "user", i), {}});
        m.userAccounts.push_back(std::move(addr));
    }

    std::vector<std::unique_ptr<TrustProvider>> provs;
    for (const TrustProviderConfig& pc : cfg.providers) {
        led.create_account(pc.address, 1'000'000'000'000ULL);
        Transaction reg;
        reg.sender = pc.address;
        reg.payload = ProviderRegistrationPayload{pc.queryFee};
        led.submit_transaction(std::move(reg));
        provs.push_back(std::make_unique<TrustProvider>(
            pc, [&led](Transaction tx) { led.submit_transaction(std::move(tx)); }));
    }

    std::vector<AttackState> attacks;
    std::map<Address, std::size_t> attackIndex;  // account -> attacks[] slot
    for (std::size_t ai = 0; ai < cfg.attacks.size(); ++ai) {
        const AttackConfig& a = cfg.attacks[ai];
        AttackState st;
        st.cfg = &a;
        const std::string tag = std::to_string(ai + 1);
        switch (a.kind) {
        case AttackKind::BadMouthing:
        case AttackKind::GoodMouthing:
            st.accounts.push_back("attacker-" + tag);
            break;
        case AttackKind::Collusion:
            for (std::uint32_t j = 0; j < a.nAttackers; ++j)
                st.accounts.push_back("attacker-" + tag + "-" + std::to_string(j + 1));
            break;
        case AttackKind::Sybil:
            for (std::uint32_t j = 0; j < a.nClones; ++j)
                st.accounts.push_back("sybil-" + tag + "-" + std::to_string(j + 1));
            break;
        case AttackKind::OnOff:
        case AttackKind::Opportunistic:
            break;
        }
        for (const Address& acct : st.accounts) {
            led.create_account(acct, a.budget);
            attackIndex[acct] = ai;
        }
        attacks.push_back(std::move(st));
    }

    auto record_block = [&](const Block& b) {
        TokenAmount fees = 0;
        for (const Transaction& tx : b.transactions)
            fees += tx.fee;
        m.perBlock.push_back({b.number, b.transactions.size(), b.gasUsed, fees, b.events.size(),
                              led.pending_count()});
        m.txCount += b.transactions.size();
        m.totalFees += fees;
        for (const LedgerEvent& e : b.events) {
            const auto* ie = std::get_if<InteractionEventPayload>(&e.payload);
            if (ie == nullptr)
                continue;
            PendingReview pr{ie->uid, ie->resource, b.number};
            if (auto it = userIndex.find(ie->user); it != userIndex.end())
                users[it->second].queue.push_back(pr);
            else if (auto at = attackIndex.find(ie->user); at != attackIndex.end())
                attacks[at->second].queues[ie->user].push_back(pr);
        }
    };

    for (std::uint64_t t = 1; t <= cfg.durationBlocks; ++t) {
        for (UserState& u : users) {
            for (const PendingReview& pr : u.queue) {
                if (cfg.users.feedbackProbability < 1.0 &&
                    unit_double(u.rng) >= cfg.users.feedbackProbability)
                    continue;
                const bool good =
                    unit_double(u.rng) < effective_quality(cfg, pr.service, pr.accessBlock);
                Transaction tx;
                tx.sender = u.addr;
                tx.payload = ReviewSubmissionPayload{u.addr, pr.uid,
                                                     good ? cfg.contracts.ratingMax : 0};
                led.submit_transaction(std::move(tx));
            }
            u.queue.clear();

            if (unit_double(u.rng) < cfg.users.interactionRate) {
                const auto pick =
                    static_cast<std::size_t>(unit_double(u.rng) *
                                             static_cast<double>(cfg.services.size()));
                const ServiceSpec& s = cfg.services[pick];
                Transaction tx;
                tx.sender = u.addr;
                tx.payload = AccessRequestPayload{s.id, s.price};
                led.submit_transaction(std::move(tx));
            }

            if (cfg.users.queryRate > 0.0 && !provs.empty() && t >= 2 &&
                unit_double(u.rng) < cfg.users.queryRate) {
                const auto pp = static_cast<std::size_t>(
                    unit_double(u.rng) * static_cast<double>(cfg.providers.size()));
                const auto sp = static_cast<std::size_t>(
                    unit_double(u.rng) * static_cast<double>(cfg.services.size()));
                Transaction tx;
                tx.sender = u.addr;
                tx.payload = ScoreQueryPayload{cfg.providers[pp].address, cfg.services[sp].id,
                                               cfg.providers[pp].queryFee};
                led.submit_transaction(std::move(tx));
            }
        }

        for (AttackState& st : attacks)
            attack_act(st, t, cfg, led);

        const Block& b = node.produce_block(t * cfg.ledger.blockInterval);
        for (auto& p : provs)
            p->ingest_block(b);
        record_block(b);
    }

    // Trailing blocks pick up score updates pushed after the last user block.
    std::uint64_t extra = 0;
    while (led.pending_count() > 0 && extra < 5) {
        ++extra;
        const Block& b = node.produce_block((cfg.durationBlocks + extra) * cfg.ledger.blockInterval);
        for (auto& p : provs)
            p->ingest_block(b);
        record_block(b);
    }

    for (auto& p : provs) {
        const Address& addr = p->config().address;
        m.reports[addr] = p->run_detectors();
        m.trajectories[addr] = p->trajectories();
        for (const ServiceSpec& s : cfg.services)
            m.finalScores[addr][s.id] = p->answer_query(s.id);
    }

    m.chainValid = led.verify_chain().ok;
    m.feedbackBackingClean = scan_feedback_backing(led.blocks()).empty();
    m.blockCount = led.blocks().size() - 1;
    m.finalBlockHash = to_hex(led.last_block().hash);

    if (!cfg.attacks.empty()) {
        ScenarioConfig baselineCfg = cfg;
        baselineCfg.attacks.clear();
        const ScenarioResult baseline = run_scenario(baselineCfg);

        for (std::size_t ai = 0; ai < cfg.attacks.size(); ++ai) {
            const AttackConfig& a = cfg.attacks[ai];
            AttackMetrics am;
            am.kind = to_string(a.kind);
            am.target = a.target;
            am.accounts = attacks[ai].accounts;
            for (const Address& acct : am.accounts)
                am.spend += a.budget - led.balance(acct);

            if (!cfg.providers.empty()) {
                const Address& prov = cfg.providers.front().address;
                std::map<std::uint64_t, double> base;
                if (auto pit = baseline.metrics.trajectories.find(prov);
                    pit != baseline.metrics.trajectories.end())
                    if (auto sit = pit->second.find(a.target); sit != pit->second.end())
                        for (const auto& [blk, score] : sit->second)
                            base[blk] = score;
                if (auto pit = m.trajectories.find(prov); pit != m.trajectories.end())
                    if (auto sit = pit->second.find(a.target); sit != pit->second.end())
                        for (const auto& [blk, score] : sit->second)
                            if (auto bit = base.find(blk); bit != base.end())
                                am.scoreDisplacement = std::max(
                                    am.scoreDisplacement, std::abs(score - bit->second));
            }

            const std::set<Address> mine(am.accounts.begin(), am.accounts.end());
            for (const auto& [prov, reports] : m.reports)
                for (const DetectionReport& r : reports)
                    if (r.subject == a.target || r.counterpart == a.target ||
                        mine.count(r.subject) != 0)
                        ++am.relatedReports;
            m.attacks.push_back(std::move(am));
        }
    }
    return result;
}

// --- benchmark ----------------------------------------------------------------

std::vector<BenchRow> bench_throughput(const std::vector<std::size_t>& workloads, TxKind kind,
                                       const LedgerConfig& lc) {
    if (kind != TxKind::AccessRequest && kind != TxKind::ReviewSubmission &&
        kind != TxKind::ScoreQuery)
        throw std::invalid_argument("bench_throughput: unsupported transaction kind");

    std::vector<BenchRow> rows;
    for (const std::size_t workload : workloads) {
        Node node(lc, {});
        Ledger& led = node.ledger();
        led.create_account("bench-user", 1'000'000'000'000'000ULL);
        led.create_account("bench-svc", 0);
        node.contracts().register_resource("bench-svc", 1, "bench-svc");

        std::uint64_t now = 0;
        auto seal = [&]() -> const Block& { return node.produce_block(now += lc.blockInterval); };

        if (kind == TxKind::ScoreQuery) {
            led.create_account("bench-prov", 1'000'000'000ULL);
            Transaction reg;
            reg.sender = "bench-prov";
            reg.payload = ProviderRegistrationPayload{0};
            led.submit_transaction(std::move(reg));
            seal();
        }

        const std::size_t seeded = 11'110;
        if (kind == TxKind::ReviewSubmission) {
            for (std::size_t j = 0; j < seeded; ++j) {
                Transaction tx;
                tx.sender = "bench-user";
                tx.payload = AccessRequestPayload{"bench-svc", 1};
                led.submit_transaction(std::move(tx));
            }
            while (led.pending_count() > 0)
                seal();
        }

        for (std::size_t j = 0; j < workload; ++j) {
            Transaction tx;
            tx.sender = "bench-user";
            switch (kind) {
            case TxKind::AccessRequest:
                tx.payload = AccessRequestPayload{"bench-svc", 1};
                break;
            case TxKind::ReviewSubmission:
                tx.payload =
                    ReviewSubmissionPayload{"bench-user", static_cast<Uid>(j % seeded) + 1, 5};
                break;
            default:
                tx.payload = ScoreQueryPayload{"bench-prov", "bench-svc", 0};
                break;
            }
            if (!led.submit_transaction(std::move(tx)).accepted)
                throw std::logic_error("bench_throughput: workload transaction rejected");
        }

        BenchRow row;
        row.workload = workload;
        std::uint64_t txs = 0;
        TokenAmount fees = 0;
        while (led.pending_count() > 0) {
            const Block& b = seal();
            ++row.blocks;
            txs += b.transactions.size();
            for (const Transaction& tx : b.transactions)
                fees += tx.fee;
        }
        row.totalTimeSeconds =
            static_cast<double>(row.blocks) * static_cast<double>(lc.blockInterval);
        row.tps = static_cast<double>(workload) / row.totalTimeSeconds;
        row.avgTxPerBlock = static_cast<double>(txs) / static_cast<double>(row.blocks);
        row.avgFeePerTx = static_cast<double>(fees) / static_cast<double>(workload);
        rows.push_back(row);
    }
    return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "workload,blocks,totalTimeSeconds,tps,avgTxPerBlock,avgFeePerTx\n";
    for (const BenchRow& r : rows)
        out << r.workload << ',' << r.blocks << ',' << r.totalTimeSeconds << ',' << r.tps << ','
            << r.avgTxPerBlock << ',' << r.avgFeePerTx << '\n';
}

// --- metrics ------------------------------------------------------------------

ordered_json MetricsBundle::summary() const {
    ordered_json j;
    j["blocks"] = blockCount;
    j["transactions"] = txCount;
    j["totalFees"] = totalFees;
    j["finalBlockHash"] = finalBlockHash;
    j["chainValid"] = chainValid;
    j["feedbackBackingClean"] = feedbackBackingClean;
    j["finalScores"] = ordered_json::object();
    for (const auto& [prov, scores] : finalScores) {
        ordered_json s = ordered_json::object();
        for (const auto& [svc, score] : scores)
            s[svc] = score;
        j["finalScores"][prov] = std::move(s);
    }
    j["reports"] = ordered_json::object();
    for (const auto& [prov, rs] : reports) {
        ordered_json arr = ordered_json::array();
        for (const DetectionReport& r : rs) {
            ordered_json rj;
            rj["kind"] = to_string(r.kind);
            rj["subject"] = r.subject;
            rj["counterpart"] = r.counterpart;
            rj["firstBlock"] = r.firstBlock;
            rj["lastBlock"] = r.lastBlock;
            rj["count"] = r.count;
            rj["baseline"] = r.baseline;
            arr.push_back(std::move(rj));
        }
        j["reports"][prov] = std::move(arr);
    }
    j["attacks"] = ordered_json::array();
    for (const AttackMetrics& a : attacks) {
        ordered_json aj;
        aj["kind"] = a.kind;
        aj["target"] = a.target;
        aj["accounts"] = a.accounts;
        aj["spend"] = a.spend;
        aj["scoreDisplacement"] = a.scoreDisplacement;
        aj["relatedReports"] = a.relatedReports;
        j["attacks"].push_back(std::move(aj));
    }
    return j;
}

void MetricsBundle::write_block_csv(std::ostream& out) const {
    out << "block,transactions,gasUsed,fees,events,pendingAfter\n";
    for (const BlockMetrics& b : perBlock)
        out << b.block << ',' << b.txCount << ',' << b.gasUsed << ',' << b.fees << ','
            << b.events << ',' << b.pendingAfter << '\n';
}

}  // namespace trustledger
