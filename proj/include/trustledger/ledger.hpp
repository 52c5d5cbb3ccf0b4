// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/digest.hpp>
#include <trustledger/types.hpp>

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace trustledger {

// ---------------------------------------------------------------------------
// Transactions
// ---------------------------------------------------------------------------

enum class TxKind : std::uint8_t {
    AccessRequest,
    ReviewSubmission,
    ScoreQuery,
    ScoreUpdate,
    ProviderRegistration,
    Transfer,
};

const char* to_string(TxKind k);

struct AccessRequestPayload {
    Address resource;
    TokenAmount payment = 0;
};

struct ReviewSubmissionPayload {
    Address submitter;  // must match tx.sender and the interaction's user
    Uid uid = 0;        // interaction being reviewed
    std::int64_t rating = 0;
};

struct ScoreQueryPayload {
    Address provider;
    Address service;
    TokenAmount fee = 0;
};

struct ScoreUpdatePayload {
    Address service;
    double score = 0.0;
};

struct ProviderRegistrationPayload {
    TokenAmount fee = 0;  // per-query fee the provider will charge
};

struct TransferPayload {
    Address to;
    TokenAmount amount = 0;
};

// Variant order matches TxKind so payload.index() doubles as the kind tag.
using TxPayload = std::variant<AccessRequestPayload, ReviewSubmissionPayload, ScoreQueryPayload,
                               ScoreUpdatePayload, ProviderRegistrationPayload, TransferPayload>;

enum class TxStatus : std::uint8_t { Pending, Success, Reverted };

// Typed reasons a transaction handler can revert. A reverted transaction
// still pays its full gas fee but leaves no events behind.
enum class ExecError : std::uint8_t {
    None,
    UnknownAccount,
    InsufficientBalance,
    InsufficientPayment,
    UnknownResource,
    NoSuchInteraction,
    SubmitterMismatch,
    RatingOutOfRange,
    UnknownProvider,
    InsufficientFee,
    AlreadyRegistered,
    ScoreOutOfRange,
};

const char* to_string(ExecError e);

struct Transaction {
    Address sender;
    TxPayload payload;
    Gas gasUsed = 0;      // filled at inclusion
    TokenAmount fee = 0;  // gasUsed * gas price at inclusion
    TxStatus status = TxStatus::Pending;
    ExecError error = ExecError::None;

    TxKind kind() const { return static_cast<TxKind>(payload.index()); }
};

// ---------------------------------------------------------------------------
// Events
// ---------------------------------------------------------------------------

enum class EventKind : std::uint8_t {
    Interaction,
    Feedback,
    ScoreUpdate,
    ScoreResponse,
};

const char* to_string(EventKind k);

struct InteractionEventPayload {
    Address user;
    Address resource;
    Uid uid = 0;
};

struct FeedbackEventPayload {
    Address submitter;
    Address delegator;  // the resource that was accessed
    std::int64_t rating = 0;
    Uid uid = 0;
};

struct ScoreUpdateEventPayload {
    Address provider;
    Address service;
    double score = 0.0;
};

struct ScoreResponseEventPayload {
    Address requester;
    Address provider;
    Address service;
    double score = 0.0;
};

using EventPayload = std::variant<InteractionEventPayload, FeedbackEventPayload,
                                  ScoreUpdateEventPayload, ScoreResponseEventPayload>;

struct LedgerEvent {
    LogicalTime time;  // (block number, index in block), assigned at sealing
    EventPayload payload;

    EventKind kind() const { return static_cast<EventKind>(payload.index()); }
};

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

struct Block {
    std::uint64_t number = 0;
    Hash32 parentHash{};
    std::uint64_t timestamp = 0;  // simulated seconds
    std::vector<Transaction> transactions;
    std::vector<LedgerEvent> events;
    Gas gasUsed = 0;
    Hash32 hash{};
};

// Hash over (number, parentHash, timestamp, transactions, events) in the
// canonical encoding. gasUsed is recomputable from the transactions, so
// verify_chain checks it separately instead of hashing it.
Hash32 compute_block_hash(const Block& b);

// ---------------------------------------------------------------------------
// Gas
// ---------------------------------------------------------------------------

Gas base_gas_cost(TxKind k);

// Congestion pricing: basePrice * (1 + poolDepth / 1000), rounded up and
// evaluated in integer arithmetic. Empty pool pays exactly basePrice.
TokenAmount gas_price(TokenAmount basePrice, std::size_t poolDepth);

struct LedgerConfig {
    std::uint64_t blockInterval = 12;  // simulated seconds between blocks
    Gas blockGasLimit = 5000 * base_gas_cost(TxKind::ReviewSubmission);
    TokenAmount baseGasPrice = 10;
};

// ---------------------------------------------------------------------------
// Accounts
// ---------------------------------------------------------------------------

class AccountTable {
  public:
    void create(const Address& addr, TokenAmount balance);
    bool exists(const Address& addr) const { return balances_.count(addr) != 0; }
    TokenAmount balance(const Address& addr) const;
    bool debit(const Address& addr, TokenAmount amount);
    void credit(const Address& addr, TokenAmount amount);
    bool transfer(const Address& from, const Address& to, TokenAmount amount);
    TokenAmount total() const;
    const std::map<Address, TokenAmount>& all() const { return balances_; }

  private:
    std::map<Address, TokenAmount> balances_;
};

// ---------------------------------------------------------------------------
// Ledger
// ---------------------------------------------------------------------------

enum class SubmitError : std::uint8_t { None, UnknownAccount, InsufficientBalance };

struct SubmitResult {
    bool accepted = false;
    SubmitError error = SubmitError::None;
    std::uint64_t sequence = 0;  // admission order, for diagnostics
};

struct VerifyResult {
    bool ok = true;
    std::uint64_t blockNumber = 0;  // first offending block when !ok
    std::string reason;

    explicit operator bool() const { return ok; }
};

struct EventFilter {
    std::optional<EventKind> kind;
    std::optional<Address> address;  // matches any address field of the payload
    std::optional<Uid> uid;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> blockRange;  // inclusive
};

struct ExecContext {
    std::uint64_t blockNumber = 0;
    AccountTable& accounts;
};

struct ExecResult {
    ExecError error = ExecError::None;
    std::vector<EventPayload> events;  // discarded when error != None
};

// Append-only chain of hash-linked blocks over an account table and a FIFO
// pending pool. Contract-kind transactions are executed through an injected
// executor; plain transfers are settled natively. One instance models the
// whole network: production is the consensus outcome, so there is no notion
// of forks or validators here.
class Ledger {
  public:
    using Executor = std::function<ExecResult(const Transaction&, ExecContext&)>;

    explicit Ledger(LedgerConfig cfg = {}, Executor executor = {});

    void create_account(const Address& addr, TokenAmount balance);
    bool has_account(const Address& addr) const { return accounts_.exists(addr); }
    TokenAmount balance(const Address& addr) const { return accounts_.balance(addr); }
    AccountTable& accounts() { return accounts_; }
    const AccountTable& accounts() const { return accounts_; }

    // Admission control: sender must exist and cover the worst-case fee plus
    // any token amount the payload moves, measured against current prices.
    SubmitResult submit_transaction(Transaction tx);

    // Seals the next block at simulated time `now`. Drains the pool in FIFO
    // order until the next transaction would exceed blockGasLimit. Throws
    // std::invalid_argument if `now` is earlier than one blockInterval past
    // the previous block.
    const Block& produce_block(std::uint64_t now);

    // Recomputes every hash link and per-block bookkeeping; reports the first
    // violation found.
    VerifyResult verify_chain() const;

    std::vector<LedgerEvent> query_events(const EventFilter& filter = {}) const;

    TokenAmount current_gas_price() const;
    std::size_t pending_count() const { return pool_.size(); }
    TokenAmount miner_fees() const { return minerFees_; }
    const LedgerConfig& config() const { return cfg_; }

    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& last_block() const { return blocks_.back(); }

    // Replaces the chain wholesale without re-validating it. Used when
    // loading a dumped chain for offline analysis; pair with verify_chain.
    void restore_chain(std::vector<Block> blocks);

  private:
    LedgerConfig cfg_;
    Executor executor_;
    AccountTable accounts_;
    std::deque<Transaction> pool_;
    std::vector<Block> blocks_;
    TokenAmount minerFees_ = 0;
    std::uint64_t submitSeq_ = 0;
};

}  // namespace trustledger
