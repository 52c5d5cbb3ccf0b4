// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/ledger.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trustledger {

struct ContractConfig {
    std::int64_t ratingMax = 5;         // ratings are integers in [0, ratingMax]
    std::int64_t ratingThreshold = 3;   // rating >= threshold counts as positive
    double emptyScore = 0.5;            // served when a provider has no cached score
};

struct ResourceRecord {
    Address owner;  // account credited with access payments
    TokenAmount price = 0;
};

struct ProviderRecord {
    TokenAmount fee = 0;  // charged per score query
    struct CachedScore {
        double score = 0.0;
        std::uint64_t asOfBlock = 0;
    };
    std::map<Address, CachedScore> cachedScores;  // service -> latest pushed score
};

// State the review handler validates against: which (uid, user, resource)
// triples exist. Rebuilt from sealed events only, never from the pool, so a
// review can only reference an interaction that is already on chain.
struct FeedbackState {
    struct InteractionRef {
        Address user;
        Address resource;
    };
    std::map<Uid, InteractionRef> interactions;

    const InteractionRef* find(Uid uid) const {
        auto it = interactions.find(uid);
        return it == interactions.end() ? nullptr : &it->second;
    }
};

// Executes the contract-kind transactions against registry state. Handlers
// follow check-then-apply: validation happens before any state or balance
// change, so a revert has no side effects beyond the gas already charged.
class ContractMachine {
  public:
    explicit ContractMachine(ContractConfig cfg = {});

    // Harness-level setup, not a transaction: makes an address accessible as
    // a paid resource. The owner account collects the payments.
    void register_resource(const Address& resource, TokenAmount price, const Address& owner);

    // Entry point wired into Ledger::produce_block.
    ExecResult execute(const Transaction& tx, ExecContext& ctx);

    ExecResult exec_access_request(const Address& sender, const AccessRequestPayload& p,
                                   ExecContext& ctx);
    ExecResult exec_review_submission(const Address& sender, const ReviewSubmissionPayload& p);
    ExecResult exec_score_query(const Address& sender, const ScoreQueryPayload& p,
                                ExecContext& ctx);
    ExecResult exec_score_update(const Address& sender, const ScoreUpdatePayload& p,
                                 ExecContext& ctx);
    ExecResult exec_provider_registration(const Address& sender,
                                          const ProviderRegistrationPayload& p);

    const ContractConfig& config() const { return cfg_; }
    const FeedbackState& feedback_state() const { return feedback_; }
    const std::map<Address, ProviderRecord>& providers() const { return providers_; }
    const std::map<Address, ResourceRecord>& resources() const { return resources_; }
    std::optional<TokenAmount> resource_price(const Address& resource) const;
    Uid next_uid() const { return nextUid_; }

  private:
    ContractConfig cfg_;
    std::map<Address, ResourceRecord> resources_;
    std::map<Address, ProviderRecord> providers_;
    FeedbackState feedback_;
    Uid nextUid_ = 1;  // uid 0 is reserved as "no interaction"
};

// A ledger with the contract machine installed as its executor. The two
// halves stay independently testable; this ties their lifetimes together.
class Node {
  public:
    explicit Node(LedgerConfig lc = {}, ContractConfig cc = {});

    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;

    Ledger& ledger() { return ledger_; }
    const Ledger& ledger() const { return ledger_; }
    ContractMachine& contracts() { return contracts_; }
    const ContractMachine& contracts() const { return contracts_; }

    SubmitResult submit(Transaction tx) { return ledger_.submit_transaction(std::move(tx)); }
    const Block& produce_block(std::uint64_t now) { return ledger_.produce_block(now); }
    std::uint64_t next_block_time() const {
        return ledger_.last_block().timestamp + interval_;
    }

  private:
    ContractMachine contracts_;
    Ledger ledger_;
    std::uint64_t interval_;
};

// Audit over a sealed chain: every feedback event must reference an
// interaction event that appeared earlier on the chain, with the feedback's
// submitter equal to the interaction's user and the delegator equal to its
// resource. An empty result means the chain upholds the guarantee.
struct FeedbackBackingViolation {
    LogicalTime at;
    Uid uid = 0;
    std::string reason;
};

std::vector<FeedbackBackingViolation> scan_feedback_backing(const std::vector<Block>& blocks);

}  // namespace trustledger
