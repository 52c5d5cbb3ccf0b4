// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/contracts.hpp>

#include <stdexcept>

namespace trustledger {

ContractMachine::ContractMachine(ContractConfig cfg) : cfg_(cfg) {
    if (cfg_.ratingMax < 1 || cfg_.ratingThreshold < 0 || cfg_.ratingThreshold > cfg_.ratingMax)
        throw std::invalid_argument("ContractConfig: rating bounds are inconsistent");
}

void ContractMachine::register_resource(const Address& resource, TokenAmount price,
                                        const Address& owner) {
    resources_[resource] = ResourceRecord{owner.empty() ? resource : owner, price};
}

std::optional<TokenAmount> ContractMachine::resource_price(const Address& resource) const {
    auto it = resources_.find(resource);
    if (it == resources_.end())
        return std::nullopt;
    return it->second.price;
}

ExecResult ContractMachine::execute(const Transaction& tx, ExecContext& ctx) {
    switch (tx.kind()) {
    case TxKind::AccessRequest:
        return exec_access_request(tx.sender, std::get<AccessRequestPayload>(tx.payload), ctx);
    case TxKind::ReviewSubmission:
        return exec_review_submission(tx.sender, std::get<ReviewSubmissionPayload>(tx.payload));
    case TxKind::ScoreQuery:
        return exec_score_query(tx.sender, std::get<ScoreQueryPayload>(tx.payload), ctx);
    case TxKind::ScoreUpdate:
        return exec_score_update(tx.sender, std::get<ScoreUpdatePayload>(tx.payload), ctx);
    case TxKind::ProviderRegistration:
        return exec_provider_registration(tx.sender,
                                          std::get<ProviderRegistrationPayload>(tx.payload));
    case TxKind::Transfer:
        break;  // settled natively by the ledger
    }
    throw std::logic_error("ContractMachine::execute: unexpected transaction kind");
}

ExecResult ContractMachine::exec_access_request(const Address& sender,
                                                const AccessRequestPayload& p, ExecContext& ctx) {
    auto it = resources_.find(p.resource);
    if (it == resources_.end())
        return {ExecError::UnknownResource, {}};
    if (p.payment < it->second.price)
        return {ExecError::InsufficientPayment, {}};
    if (!ctx.accounts.transfer(sender, it->second.owner, p.payment))
        return {ExecError::InsufficientBalance, {}};

    const Uid uid = nextUid_++;
    feedback_.interactions[uid] = {sender, p.resource};
    return {ExecError::None, {InteractionEventPayload{sender, p.resource, uid}}};
}

ExecResult ContractMachine::exec_review_submission(const Address& sender,
                                                   const ReviewSubmissionPayload& p) {
    const auto* interaction = feedback_.find(p.uid);
    if (interaction == nullptr)
        return {ExecError::NoSuchInteraction, {}};
    if (p.submitter != sender || interaction->user != sender)
        return {ExecError::SubmitterMismatch, {}};
    if (p.rating < 0 || p.rating > cfg_.ratingMax)
        return {ExecError::RatingOutOfRange, {}};

    return {ExecError::None,
            {FeedbackEventPayload{sender, interaction->resource, p.rating, p.uid}}};
}

ExecResult ContractMachine::exec_score_query(const Address& sender, const ScoreQueryPayload& p,
                                             ExecContext& ctx) {
    auto it = providers_.find(p.provider);
    if (it == providers_.end())
        return {ExecError::UnknownProvider, {}};
    if (p.fee < it->second.fee)
        return {ExecError::InsufficientFee, {}};
    if (!ctx.accounts.transfer(sender, p.provider, p.fee))
        return {ExecError::InsufficientBalance, {}};

    // The response is addressed to the requester on chain; there is no
    // side channel back to the caller.
    const auto cached = it->second.cachedScores.find(p.service);
    const double score =
        cached == it->second.cachedScores.end() ? cfg_.emptyScore : cached->second.score;
    return {ExecError::None, {ScoreResponseEventPayload{sender, p.provider, p.service, score}}};
}

ExecResult ContractMachine::exec_score_update(const Address& sender, const ScoreUpdatePayload& p,
                                              ExecContext& ctx) {
    auto it = providers_.find(sender);
    if (it == providers_.end())
        return {ExecError::UnknownProvider, {}};
    if (!(p.score >= 0.0 && p.score <= 1.0))
        return {ExecError::ScoreOutOfRange, {}};

    it->second.cachedScores[p.service] = {p.score, ctx.blockNumber};
    return {ExecError::None, {ScoreUpdateEventPayload{sender, p.service, p.score}}};
}

ExecResult ContractMachine::exec_provider_registration(const Address& sender,
                                                       const ProviderRegistrationPayload& p) {
    if (providers_.count(sender) != 0)
        return {ExecError::AlreadyRegistered, {}};
    providers_[sender] = ProviderRecord{p.fee, {}};
    return {ExecError::None, {}};
}

Node::Node(LedgerConfig lc, ContractConfig cc)
    : contracts_(cc),
      ledger_(lc, [this](const Transaction& tx, ExecContext& ctx) {
          return contracts_.execute(tx, ctx);
      }),
      interval_(lc.blockInterval) {}

std::vector<FeedbackBackingViolation> scan_feedback_backing(const std::vector<Block>& blocks) {
    std::vector<FeedbackBackingViolation> violations;
    struct Seen {
        Address user;
        Address resource;
        LogicalTime at;
    };
    std::map<Uid, Seen> interactions;

    for (const Block& b : blocks) {
        for (const LedgerEvent& e : b.events) {
            if (const auto* ie = std::get_if<InteractionEventPayload>(&e.payload)) {
                interactions.emplace(ie->uid, Seen{ie->user, ie->resource, e.time});
            } else if (const auto* fe = std::get_if<FeedbackEventPayload>(&e.payload)) {
                auto it = interactions.find(fe->uid);
                if (it == interactions.end() || !(it->second.at < e.time)) {
                    violations.push_back(
                        {e.time, fe->uid, "feedback references no earlier interaction"});
                } else if (it->second.user != fe->submitter) {
                    violations.push_back(
                        {e.time, fe->uid, "feedback submitter is not the interaction user"});
                } else if (it->second.resource != fe->delegator) {
                    violations.push_back(
                        {e.time, fe->uid, "feedback delegator is not the interaction resource"});
                }
            }
        }
    }
    return violations;
}

}  // namespace trustledger
