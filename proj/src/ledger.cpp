// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/ledger.hpp>

#include <set>
#include <stdexcept>

namespace trustledger {

const char* to_string(TxKind k) {
    switch (k) {
    case TxKind::AccessRequest: return "access_request";
    case TxKind::ReviewSubmission: return "review_submission";
    case TxKind::ScoreQuery: return "score_query";
    case TxKind::ScoreUpdate: return "score_update";
    case TxKind::ProviderRegistration: return "provider_registration";
    case TxKind::Transfer: return "transfer";
    }
    return "unknown";
}

const char* to_string(ExecError e) {
    switch (e) {
    case ExecError::None: return "none";
    case ExecError::UnknownAccount: return "unknown_account";
    case ExecError::InsufficientBalance: return "insufficient_balance";
    case ExecError::InsufficientPayment: return "insufficient_payment";
    case ExecError::UnknownResource: return "unknown_resource";
    case ExecError::NoSuchInteraction: return "no_such_interaction";
    case ExecError::SubmitterMismatch: return "submitter_mismatch";
    case ExecError::RatingOutOfRange: return "rating_out_of_range";
    case ExecError::UnknownProvider: return "unknown_provider";
    case ExecError::InsufficientFee: return "insufficient_fee";
    case ExecError::AlreadyRegistered: return "already_registered";
    case ExecError::ScoreOutOfRange: return "score_out_of_range";
    }
    return "unknown";
}

const char* to_string(EventKind k) {
    switch (k) {
    case EventKind::Interaction: return "interaction";
    case EventKind::Feedback: return "feedback";
    case EventKind::ScoreUpdate: return "score_update";
    case EventKind::ScoreResponse: return "score_response";
    }
    return "unknown";
}

Gas base_gas_cost(TxKind k) {
    switch (k) {
    case TxKind::AccessRequest: return 50'000;
    case TxKind::ReviewSubmission: return 80'000;
    case TxKind::ScoreQuery: return 30'000;
    case TxKind::ScoreUpdate: return 40'000;
    case TxKind::ProviderRegistration: return 60'000;
    case TxKind::Transfer: return 21'000;
    }
    throw std::invalid_argument("base_gas_cost: unknown transaction kind");
}

TokenAmount gas_price(TokenAmount basePrice, std::size_t poolDepth) {
    const auto depth = static_cast<TokenAmount>(poolDepth);
    return (basePrice * (1000 + depth) + 999) / 1000;
}

// --- canonical encoding -----------------------------------------------------

namespace {

void encode(ByteWriter& w, const TxPayload& p) {
    std::visit(
        [&w](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AccessRequestPayload>) {
                w.str(v.resource);
                w.u64(v.payment);
            } else if constexpr (std::is_same_v<T, ReviewSubmissionPayload>) {
                w.str(v.submitter);
                w.u64(v.uid);
                w.i64(v.rating);
            } else if constexpr (std::is_same_v<T, ScoreQueryPayload>) {
                w.str(v.provider);
                w.str(v.service);
                w.u64(v.fee);
            } else if constexpr (std::is_same_v<T, ScoreUpdatePayload>) {
                w.str(v.service);
                w.f64(v.score);
            } else if constexpr (std::is_same_v<T, ProviderRegistrationPayload>) {
                w.u64(v.fee);
            } else {
                static_assert(std::is_same_v<T, TransferPayload>);
                w.str(v.to);
                w.u64(v.amount);
            }
        },
        p);
}

void encode(ByteWriter& w, const Transaction& tx) {
    w.u8(static_cast<std::uint8_t>(tx.kind()));
    w.str(tx.sender);
    encode(w, tx.payload);
    w.u64(tx.gasUsed);
    w.u64(tx.fee);
    w.u8(static_cast<std::uint8_t>(tx.status));
    w.u8(static_cast<std::uint8_t>(tx.error));
}

void encode(ByteWriter& w, const EventPayload& p) {
    std::visit(
        [&w](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, InteractionEventPayload>) {
                w.str(v.user);
                w.str(v.resource);
                w.u64(v.uid);
            } else if constexpr (std::is_same_v<T, FeedbackEventPayload>) {
                w.str(v.submitter);
                w.str(v.delegator);
                w.i64(v.rating);
                w.u64(v.uid);
            } else if constexpr (std::is_same_v<T, ScoreUpdateEventPayload>) {
                w.str(v.provider);
                w.str(v.service);
                w.f64(v.score);
            } else {
                static_assert(std::is_same_v<T, ScoreResponseEventPayload>);
                w.str(v.requester);
                w.str(v.provider);
                w.str(v.service);
                w.f64(v.score);
            }
        },
        p);
}

void encode(ByteWriter& w, const LedgerEvent& e) {
    w.u8(static_cast<std::uint8_t>(e.kind()));
    w.u64(e.time.block);
    w.u32(e.time.index);
    encode(w, e.payload);
}

}  // namespace

Hash32 compute_block_hash(const Block& b) {
    ByteWriter w;
    w.u64(b.number);
    w.hash(b.parentHash);
    w.u64(b.timestamp);
    w.u32(static_cast<std::uint32_t>(b.transactions.size()));
    for (const auto& tx : b.transactions)
        encode(w, tx);
    w.u32(static_cast<std::uint32_t>(b.events.size()));
    for (const auto& e : b.events)
        encode(w, e);
    return w.digest();
}

// --- accounts ----------------------------------------------------------------

void AccountTable::create(const Address& addr, TokenAmount balance) {
    if (addr.empty())
        throw std::invalid_argument("account address must be non-empty");
    balances_[addr] = balance;
}

TokenAmount AccountTable::balance(const Address& addr) const {
    auto it = balances_.find(addr);
    return it == balances_.end() ? 0 : it->second;
}

bool AccountTable::debit(const Address& addr, TokenAmount amount) {
    auto it = balances_.find(addr);
    if (it == balances_.end() || it->second < amount)
        return false;
    it->second -= amount;
    return true;
}

void AccountTable::credit(const Address& addr, TokenAmount amount) {
    balances_[addr] += amount;
}

bool AccountTable::transfer(const Address& from, const Address& to, TokenAmount amount) {
    if (!exists(to) || !debit(from, amount))
        return false;
    credit(to, amount);
    return true;
}

TokenAmount AccountTable::total() const {
    TokenAmount sum = 0;
    for (const auto& [addr, bal] : balances_)
        sum += bal;
    return sum;
}

// --- ledger -------------------------------------------------------------------

namespace {

// Tokens the payload itself moves out of the sender, on top of the gas fee.
TokenAmount payload_outflow(const TxPayload& p) {
    if (const auto* a = std::get_if<AccessRequestPayload>(&p))
        return a->payment;
    if (const auto* q = std::get_if<ScoreQueryPayload>(&p))
        return q->fee;
    if (const auto* t = std::get_if<TransferPayload>(&p))
        return t->amount;
    return 0;
}

}  // namespace

Ledger::Ledger(LedgerConfig cfg, Executor executor)
    : cfg_(cfg), executor_(std::move(executor)) {
    Block genesis;
    genesis.hash = compute_block_hash(genesis);
    blocks_.push_back(std::move(genesis));
}

void Ledger::create_account(const Address& addr, TokenAmount balance) {
    accounts_.create(addr, balance);
}

SubmitResult Ledger::submit_transaction(Transaction tx) {
    if (!accounts_.exists(tx.sender))
        return {false, SubmitError::UnknownAccount, 0};
    const TokenAmount worstFee = base_gas_cost(tx.kind()) * current_gas_price();
    if (accounts_.balance(tx.sender) < worstFee + payload_outflow(tx.payload))
        return {false, SubmitError::InsufficientBalance, 0};
    tx.status = TxStatus::Pending;
    pool_.push_back(std::move(tx));
    return {true, SubmitError::None, ++submitSeq_};
}

TokenAmount Ledger::current_gas_price() const {
    return gas_price(cfg_.baseGasPrice, pool_.size());
}

const Block& Ledger::produce_block(std::uint64_t now) {
    const Block& prev = blocks_.back();
    if (now < prev.timestamp + cfg_.blockInterval)
        throw std::invalid_argument("produce_block: block interval has not elapsed");

    // Price is fixed by the pool depth at production time and shared by
    // every transaction sealed into this block.
    const TokenAmount price = current_gas_price();

    Block b;
    b.number = prev.number + 1;
    b.parentHash = prev.hash;
    b.timestamp = now;

    std::uint32_t eventIndex = 0;
    while (!pool_.empty()) {
        const Gas cost = base_gas_cost(pool_.front().kind());
        if (b.gasUsed + cost > cfg_.blockGasLimit)
            break;  // strict FIFO: the rest waits for the next block

        Transaction tx = std::move(pool_.front());
        pool_.pop_front();

        const TokenAmount fee = cost * price;
        if (!accounts_.debit(tx.sender, fee))
            continue;  // cannot pay for inclusion: discard
        minerFees_ += fee;
        tx.gasUsed = cost;
        tx.fee = fee;
        b.gasUsed += cost;

        ExecResult result;
        if (tx.kind() == TxKind::Transfer) {
            const auto& t = std::get<TransferPayload>(tx.payload);
            result.error =
                accounts_.transfer(tx.sender, t.to, t.amount) ? ExecError::None
                : accounts_.exists(t.to)                      ? ExecError::InsufficientBalance
                                                              : ExecError::UnknownAccount;
        } else if (executor_) {
            ExecContext ctx{b.number, accounts_};
            result = executor_(tx, ctx);
        } else {
            throw std::logic_error("produce_block: no executor for contract transaction");
        }

        if (result.error == ExecError::None) {
            tx.status = TxStatus::Success;
            for (auto& payload : result.events)
                b.events.push_back({{b.number, eventIndex++}, std::move(payload)});
        } else {
            tx.status = TxStatus::Reverted;
            tx.error = result.error;
        }
        b.transactions.push_back(std::move(tx));
    }

    b.hash = compute_block_hash(b);
    blocks_.push_back(std::move(b));
    return blocks_.back();
}

VerifyResult Ledger::verify_chain() const {
    std::set<Uid> seenUids;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        auto fail = [&](std::string reason) {
            return VerifyResult{false, b.number, std::move(reason)};
        };
        if (b.number != i)
            return fail("block number out of sequence");
        if (i == 0) {
            if (!b.parentHash.is_zero())
                return fail("genesis parent hash must be zero");
        } else {
            if (b.parentHash != blocks_[i - 1].hash)
                return fail("parent hash does not match previous block");
            if (b.timestamp < blocks_[i - 1].timestamp + cfg_.blockInterval)
                return fail("timestamp violates block interval");
        }
        if (compute_block_hash(b) != b.hash)
            return fail("block hash mismatch");
        Gas gasSum = 0;
        for (const auto& tx : b.transactions)
            gasSum += tx.gasUsed;
        if (gasSum != b.gasUsed)
            return fail("gas accounting mismatch");
        if (b.gasUsed > cfg_.blockGasLimit)
            return fail("block gas limit exceeded");
        for (const auto& e : b.events) {
            if (e.time.block != b.number)
                return fail("event stamped with foreign block number");
            if (const auto* ie = std::get_if<InteractionEventPayload>(&e.payload)) {
                if (!seenUids.insert(ie->uid).second)
                    return fail("duplicate interaction uid");
            }
        }
    }
    return {};
}

namespace {

bool mentions_address(const EventPayload& p, const Address& addr) {
    return std::visit(
        [&addr](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, InteractionEventPayload>)
                return v.user == addr || v.resource == addr;
            else if constexpr (std::is_same_v<T, FeedbackEventPayload>)
                return v.submitter == addr || v.delegator == addr;
            else if constexpr (std::is_same_v<T, ScoreUpdateEventPayload>)
                return v.provider == addr || v.service == addr;
            else
                return v.requester == addr || v.provider == addr || v.service == addr;
        },
        p);
}

std::optional<Uid> event_uid(const EventPayload& p) {
    if (const auto* ie = std::get_if<InteractionEventPayload>(&p))
        return ie->uid;
    if (const auto* fe = std::get_if<FeedbackEventPayload>(&p))
        return fe->uid;
    return std::nullopt;
}

}  // namespace

std::vector<LedgerEvent> Ledger::query_events(const EventFilter& filter) const {
    std::vector<LedgerEvent> out;
    for (const Block& b : blocks_) {
        if (filter.blockRange &&
            (b.number < filter.blockRange->first || b.number > filter.blockRange->second))
            continue;
        for (const LedgerEvent& e : b.events) {
            if (filter.kind && e.kind() != *filter.kind)
                continue;
            if (filter.address && !mentions_address(e.payload, *filter.address))
                continue;
            if (filter.uid && event_uid(e.payload) != *filter.uid)
                continue;
            out.push_back(e);
        }
    }
    return out;  // blocks and events are walked in order, so this is sorted
}

void Ledger::restore_chain(std::vector<Block> blocks) {
    if (blocks.empty())
        throw std::invalid_argument("restore_chain: need at least a genesis block");
    blocks_ = std::move(blocks);
}

}  // namespace trustledger
