// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/serialize.hpp>

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace trustledger {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

TxKind tx_kind_from_string(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(TxKind::Transfer); ++k)
        if (s == to_string(static_cast<TxKind>(k)))
            return static_cast<TxKind>(k);
    throw ParseError("unknown transaction kind: " + s);
}

EventKind event_kind_from_string(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(EventKind::ScoreResponse); ++k)
        if (s == to_string(static_cast<EventKind>(k)))
            return static_cast<EventKind>(k);
    throw ParseError("unknown event kind: " + s);
}

ExecError exec_error_from_string(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(ExecError::ScoreOutOfRange); ++k)
        if (s == to_string(static_cast<ExecError>(k)))
            return static_cast<ExecError>(k);
    throw ParseError("unknown exec error: " + s);
}

ordered_json payload_to_json(const TxPayload& p) {
    ordered_json j;
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AccessRequestPayload>) {
                j["resource"] = v.resource;
                j["payment"] = v.payment;
            } else if constexpr (std::is_same_v<T, ReviewSubmissionPayload>) {
                j["submitter"] = v.submitter;
                j["uid"] = v.uid;
                j["rating"] = v.rating;
            } else if constexpr (std::is_same_v<T, ScoreQueryPayload>) {
                j["provider"] = v.provider;
                j["service"] = v.service;
                j["fee"] = v.fee;
            } else if constexpr (std::is_same_v<T, ScoreUpdatePayload>) {
                j["service"] = v.service;
                j["score"] = v.score;
            } else if constexpr (std::is_same_v<T, ProviderRegistrationPayload>) {
                j["fee"] = v.fee;
            } else {
                static_assert(std::is_same_v<T, TransferPayload>);
                j["to"] = v.to;
                j["amount"] = v.amount;
            }
        },
        p);
    return j;
}

TxPayload payload_from_json(TxKind kind, const json& j) {
    switch (kind) {
    case TxKind::AccessRequest:
        return AccessRequestPayload{j.at("resource"), j.at("payment")};
    case TxKind::ReviewSubmission:
        return ReviewSubmissionPayload{j.at("submitter"), j.at("uid"), j.at("rating")};
    case TxKind::ScoreQuery:
        return ScoreQueryPayload{j.at("provider"), j.at("service"), j.at("fee")};
    case TxKind::ScoreUpdate:
        return ScoreUpdatePayload{j.at("service"), j.at("score")};
    case TxKind::ProviderRegistration:
        return ProviderRegistrationPayload{j.at("fee")};
    case TxKind::Transfer:
        return TransferPayload{j.at("to"), j.at("amount")};
    }
    throw ParseError("unhandled transaction kind");
}

ordered_json event_payload_to_json(const EventPayload& p) {
    ordered_json j;
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, InteractionEventPayload>) {
                j["user"] = v.user;
                j["resource"] = v.resource;
                j["uid"] = v.uid;
            } else if constexpr (std::is_same_v<T, FeedbackEventPayload>) {
                j["submitter"] = v.submitter;
                j["delegator"] = v.delegator;
                j["rating"] = v.rating;
                j["uid"] = v.uid;
            } else if constexpr (std::is_same_v<T, ScoreUpdateEventPayload>) {
                j["provider"] = v.provider;
                j["service"] = v.service;
                j["score"] = v.score;
            } else {
                static_assert(std::is_same_v<T, ScoreResponseEventPayload>);
                j["requester"] = v.requester;
                j["provider"] = v.provider;
                j["service"] = v.service;
                j["score"] = v.score;
            }
        },
        p);
    return j;
}

EventPayload event_payload_from_json(EventKind kind, const json& j) {
    switch (kind) {
    case EventKind::Interaction:
        return InteractionEventPayload{j.at("user"), j.at("resource"), j.at("uid")};
    case EventKind::Feedback:
        return FeedbackEventPayload{j.at("submitter"), j.at("delegator"), j.at("rating"),
                                    j.at("uid")};
    case EventKind::ScoreUpdate:
        return ScoreUpdateEventPayload{j.at("provider"), j.at("service"), j.at("score")};
    case EventKind::ScoreResponse:
        return ScoreResponseEventPayload{j.at("requester"), j.at("provider"), j.at("service"),
                                         j.at("score")};
    }
    throw ParseError("unhandled event kind");
}

const char* to_string(TxStatus s) {
    switch (s) {
    case TxStatus::Pending: return "pending";
    case TxStatus::Success: return "success";
    case TxStatus::Reverted: return "reverted";
    }
    return "unknown";
}

TxStatus tx_status_from_string(const std::string& s) {
    if (s == "pending")
        return TxStatus::Pending;
    if (s == "success")
        return TxStatus::Success;
    if (s == "reverted")
        return TxStatus::Reverted;
    throw ParseError("unknown transaction status: " + s);
}

}  // namespace

ordered_json transaction_to_json(const Transaction& tx) {
    ordered_json j;
    j["kind"] = to_string(tx.kind());
    j["sender"] = tx.sender;
    j["payload"] = payload_to_json(tx.payload);
    j["gasUsed"] = tx.gasUsed;
    j["fee"] = tx.fee;
    j["status"] = to_string(tx.status);
    j["error"] = to_string(tx.error);
    return j;
}

Transaction transaction_from_json(const json& j) {
    try {
        Transaction tx;
        tx.sender = j.at("sender");
        tx.payload = payload_from_json(tx_kind_from_string(j.at("kind")), j.at("payload"));
        tx.gasUsed = j.at("gasUsed");
        tx.fee = j.at("fee");
        tx.status = tx_status_from_string(j.at("status"));
        tx.error = exec_error_from_string(j.at("error"));
        return tx;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed transaction: ") + e.what());
    }
}

ordered_json event_to_json(const LedgerEvent& e) {
    ordered_json j;
    j["kind"] = to_string(e.kind());
    j["block"] = e.time.block;
    j["index"] = e.time.index;
    j["payload"] = event_payload_to_json(e.payload);
    return j;
}

LedgerEvent event_from_json(const json& j) {
    try {
        LedgerEvent e;
        e.time.block = j.at("block");
        e.time.index = j.at("index");
        e.payload = event_payload_from_json(event_kind_from_string(j.at("kind")), j.at("payload"));
        return e;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed event: ") + e.what());
    }
}

ordered_json block_to_json(const Block& b) {
    ordered_json j;
    j["number"] = b.number;
    j["parentHash"] = to_hex(b.parentHash);
    j["timestamp"] = b.timestamp;
    j["gasUsed"] = b.gasUsed;
    j["hash"] = to_hex(b.hash);
    j["transactions"] = ordered_json::array();
    for (const auto& tx : b.transactions)
        j["transactions"].push_back(transaction_to_json(tx));
    j["events"] = ordered_json::array();
    for (const auto& e : b.events)
        j["events"].push_back(event_to_json(e));
    return j;
}

Block block_from_json(const json& j) {
    try {
        Block b;
        b.number = j.at("number");
        b.parentHash = hash_from_hex(j.at("parentHash"));
        b.timestamp = j.at("timestamp");
        b.gasUsed = j.at("gasUsed");
        b.hash = hash_from_hex(j.at("hash"));
        for (const auto& tj : j.at("transactions"))
            b.transactions.push_back(transaction_from_json(tj));
        for (const auto& ej : j.at("events"))
            b.events.push_back(event_from_json(ej));
        return b;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed block: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("malformed block: ") + e.what());
    }
}

void dump_chain(const std::vector<Block>& blocks, const LedgerConfig& cfg, std::ostream& out) {
    ordered_json header;
    header["format"] = kDumpFormat;
    header["version"] = kDumpVersion;
    header["blocks"] = blocks.size();
    header["blockInterval"] = cfg.blockInterval;
    header["blockGasLimit"] = cfg.blockGasLimit;
    header["baseGasPrice"] = cfg.baseGasPrice;
    out << header.dump() << '\n';
    for (const auto& b : blocks)
        out << block_to_json(b).dump() << '\n';
}

void dump_chain(const Ledger& ledger, std::ostream& out) {
    dump_chain(ledger.blocks(), ledger.config(), out);
}

ChainDump load_chain(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty chain dump");
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed dump header: ") + e.what());
    }
    if (header.value("format", "") != kDumpFormat)
        throw ParseError("not a chain dump (bad format tag)");
    if (header.value("version", 0) != kDumpVersion)
        throw ParseError("unsupported chain dump version");

    ChainDump dump;
    dump.config.blockInterval = header.value("blockInterval", dump.config.blockInterval);
    dump.config.blockGasLimit = header.value("blockGasLimit", dump.config.blockGasLimit);
    dump.config.baseGasPrice = header.value("baseGasPrice", dump.config.baseGasPrice);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            dump.blocks.push_back(block_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed block line: ") + e.what());
        }
    }
    if (dump.blocks.empty())
        throw ParseError("chain dump contains no blocks");
    return dump;
}

Ledger ledger_from_dump(ChainDump dump) {
    Ledger led(dump.config);
    led.restore_chain(std::move(dump.blocks));
    return led;
}

void export_events_csv(const std::vector<Block>& blocks, std::ostream& out) {
    out << "block,index,kind,user,resource,submitter,delegator,provider,service,requester,uid,"
           "rating,score\n";
    for (const Block& b : blocks) {
        for (const LedgerEvent& e : b.events) {
            out << e.time.block << ',' << e.time.index << ',' << to_string(e.kind()) << ',';
            std::visit(
                [&out](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, InteractionEventPayload>) {
                        out << v.user << ',' << v.resource << ",,,,,," << v.uid << ",,";
                    } else if constexpr (std::is_same_v<T, FeedbackEventPayload>) {
                        out << ",," << v.submitter << ',' << v.delegator << ",,,," << v.uid << ','
                            << v.rating << ',';
                    } else if constexpr (std::is_same_v<T, ScoreUpdateEventPayload>) {
                        out << ",,,," << v.provider << ',' << v.service << ",,,,"
                            << nlohmann::json(v.score).dump();
                    } else {
                        static_assert(std::is_same_v<T, ScoreResponseEventPayload>);
                        out << ",,,," << v.provider << ',' << v.service << ',' << v.requester
                            << ",,," << nlohmann::json(v.score).dump();
                    }
                },
                e.payload);
            out << '\n';
        }
    }
}

}  // namespace trustledger
