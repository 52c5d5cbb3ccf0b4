// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/ledger.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace trustledger {

// One review submitted about one interaction. A review that references an
// interaction is a feedback; the id is the chain position of its event,
// which is unique and totally ordered.
using ReviewId = LogicalTime;

struct Review {
    ReviewId id;
    Address submitter;
    std::optional<Uid> uid;  // interaction reviewed; empty means not a feedback
    std::int64_t rating = 0;
};

struct Interaction {
    Uid uid = 0;
    Address user;
    Address service;
    LogicalTime time;
};

class DanglingFeedback : public Error {
    using Error::Error;
};

class UnknownService : public Error {
    using Error::Error;
};

class NotAFeedbackOf : public Error {
    using Error::Error;
};

// The evidence relation extracted from a chain: which reviews are evidence
// about which interactions, and which service each interaction belongs to.
// The review-to-interaction map is partial (non-feedback reviews sit outside
// it); the interaction-to-service map is total. Per interaction, feedbacks
// are kept oldest first, so rank 0 is always the oldest feedback.
class EvidenceMap {
  public:
    // Builds from sealed events. Every feedback event must reference an
    // interaction event on the same chain; otherwise DanglingFeedback.
    static EvidenceMap build(const std::vector<LedgerEvent>& events);

    // Assembles a map directly from parts, for callers that have no chain.
    // Reviews carrying a uid that is not among the interactions throw
    // DanglingFeedback; reviews without a uid are kept but map to nothing.
    static EvidenceMap from_parts(std::vector<Interaction> interactions,
                                  std::vector<Review> reviews);

    const std::map<Uid, Interaction>& interactions() const { return interactions_; }
    const std::vector<Review>& reviews() const { return reviews_; }

    const Interaction* interaction(Uid uid) const;
    const Review* review(ReviewId id) const;

    // The evidence function: interaction the review is about, if any.
    std::optional<Uid> epsilon(ReviewId id) const;

    // The service projection: service of the interaction.
    std::optional<Address> pi(Uid uid) const;

    // Reviews about `uid`, oldest first. Missing or unreviewed uids yield
    // an empty list.
    const std::vector<ReviewId>& feedbacks_of(Uid uid) const;

    // Position of feedback `x` among the feedbacks of `i` (0 = oldest).
    // Throws NotAFeedbackOf when x is not evidence about i.
    std::size_t rank_of(Uid i, ReviewId x) const;

    // Interactions of one service, ordered by chain position.
    // Throws UnknownService if no interaction maps to `service`.
    const std::vector<Uid>& interactions_of_service(const Address& service) const;

    // All feedbacks whose interaction belongs to `service`.
    std::set<ReviewId> feedbacks_for_service(const Address& service) const;

    std::vector<Address> services() const;
    bool has_service(const Address& service) const;

  private:
    std::map<Uid, Interaction> interactions_;
    std::vector<Review> reviews_;  // chain order
    std::map<ReviewId, std::size_t> reviewIndex_;
    std::map<Uid, std::vector<ReviewId>> reverseEpsilon_;  // oldest first
    std::map<Address, std::vector<Uid>> serviceIndex_;

    void index_review(const Review& r);
};

// A trace assigns to each interaction (at most) one of its feedbacks. Traces
// are partial: interactions without an entry are simply not covered. Entries
// are self-contained so scoring needs no back-reference into the map.
struct TraceEntry {
    Uid interaction = 0;
    LogicalTime interactionTime;
    ReviewId review;
    std::int64_t rating = 0;
};

class FeedbackTrace {
  public:
    FeedbackTrace() = default;

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<TraceEntry>& entries() const { return entries_; }

    // Keeps entries ordered by interaction uid. Throws std::invalid_argument
    // on a second entry for the same interaction (traces are functions).
    void insert(TraceEntry entry);

    bool contains(Uid interaction) const { return find(interaction) != nullptr; }
    const TraceEntry* find(Uid interaction) const;

  private:
    std::vector<TraceEntry> entries_;  // sorted by interaction uid
};

// Restriction order: a <= b iff b assigns the same feedback as a on every
// interaction a covers.
bool trace_leq(const FeedbackTrace& a, const FeedbackTrace& b);

// Walks all maximal traces over the reviewed interactions of a context (one
// feedback chosen per interaction that has any). Interactions with no
// feedback are excluded from the domain, so a maximal trace is total on the
// remaining ones. An all-unreviewed context yields exactly one empty trace.
class MaximalTraceEnumerator {
  public:
    MaximalTraceEnumerator(const EvidenceMap& map, std::vector<Uid> context);

    // Number of maximal traces (product of feedback counts), saturating at
    // uint64 max.
    std::uint64_t trace_count() const { return traceCount_; }

    // Reviewed interactions forming the trace domain, in uid order.
    const std::vector<Uid>& domain() const { return domain_; }

    // Emits the next trace; false once exhausted. Enumeration order is
    // lexicographic in (uid-ordered) feedback ranks.
    bool next(FeedbackTrace& out);

    void reset();

  private:
    const EvidenceMap& map_;
    std::vector<Uid> domain_;
    std::vector<std::size_t> counters_;
    std::uint64_t traceCount_ = 1;
    bool exhausted_ = false;
};

}  // namespace trustledger
