// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/ledger.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <vector>

namespace trustledger {

class ParseError : public Error {
    using Error::Error;
};

// Chain dumps are JSON Lines: a header object carrying the ledger
// parameters, then one block object per line. Field order is fixed (ordered
// emission) so a dump of a restored chain is byte-identical to the original
// dump.
inline constexpr const char* kDumpFormat = "trustledger-chain";
inline constexpr int kDumpVersion = 1;

struct ChainDump {
    LedgerConfig config;
    std::vector<Block> blocks;
};

nlohmann::ordered_json block_to_json(const Block& b);
Block block_from_json(const nlohmann::json& j);  // throws ParseError

nlohmann::ordered_json transaction_to_json(const Transaction& tx);
Transaction transaction_from_json(const nlohmann::json& j);

nlohmann::ordered_json event_to_json(const LedgerEvent& e);
LedgerEvent event_from_json(const nlohmann::json& j);

void dump_chain(const std::vector<Block>& blocks, const LedgerConfig& cfg, std::ostream& out);
void dump_chain(const Ledger& ledger, std::ostream& out);
ChainDump load_chain(std::istream& in);  // throws ParseError

// Rebuilds a ledger around a dump for offline verification and queries.
Ledger ledger_from_dump(ChainDump dump);

// Flat one-row-per-event table. Columns that do not apply to an event kind
// are left empty.
void export_events_csv(const std::vector<Block>& blocks, std::ostream& out);

}  // namespace trustledger
