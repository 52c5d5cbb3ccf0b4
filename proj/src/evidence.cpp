// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/evidence.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace trustledger {

void EvidenceMap::index_review(const Review& r) {
    reviewIndex_[r.id] = reviews_.size() - 1;
    if (!r.uid)
        return;
    if (interactions_.count(*r.uid) == 0)
        throw DanglingFeedback("feedback " + std::to_string(r.id.block) + ":" +
                               std::to_string(r.id.index) + " references unknown interaction " +
                               std::to_string(*r.uid));
    reverseEpsilon_[*r.uid].push_back(r.id);
}

EvidenceMap EvidenceMap::build(const std::vector<LedgerEvent>& events) {
    EvidenceMap m;
    for (const LedgerEvent& e : events) {
        if (const auto* ie = std::get_if<InteractionEventPayload>(&e.payload)) {
            Interaction it{ie->uid, ie->user, ie->resource, e.time};
            m.interactions_[it.uid] = it;
            m.serviceIndex_[it.service].push_back(it.uid);
        }
    }
    // Second pass so feedbacks may precede their interaction in the input
    // vector; chain order already guarantees they do not, but query_events
    // filters can hand us reordered slices.
    for (const LedgerEvent& e : events) {
        if (const auto* fe = std::get_if<FeedbackEventPayload>(&e.payload)) {
            m.reviews_.push_back(Review{e.time, fe->submitter, fe->uid, fe->rating});
            m.index_review(m.reviews_.back());
        }
    }
    // Interactions arrive in chain order, but make the per-service ordering
    // explicit rather than assumed.
    for (auto& [service, uids] : m.serviceIndex_)
        std::sort(uids.begin(), uids.end(), [&m](Uid a, Uid b) {
            return m.interactions_.at(a).time < m.interactions_.at(b).time;
        });
    return m;
}

EvidenceMap EvidenceMap::from_parts(std::vector<Interaction> interactions,
                                    std::vector<Review> reviews) {
    EvidenceMap m;
    for (Interaction& it : interactions) {
        const Uid uid = it.uid;
        const Address service = it.service;
        m.interactions_[uid] = std::move(it);
        m.serviceIndex_[service].push_back(uid);
    }
    std::sort(reviews.begin(), reviews.end(),
              [](const Review& a, const Review& b) { return a.id < b.id; });
    for (Review& r : reviews) {
        m.reviews_.push_back(std::move(r));
        m.index_review(m.reviews_.back());
    }
    for (auto& [service, uids] : m.serviceIndex_)
        std::sort(uids.begin(), uids.end(), [&m](Uid a, Uid b) {
            return m.interactions_.at(a).time < m.interactions_.at(b).time;
        });
    return m;
}

const Interaction* EvidenceMap::interaction(Uid uid) const {
    auto it = interactions_.find(uid);
    return it == interactions_.end() ? nullptr : &it->second;
}

const Review* EvidenceMap::review(ReviewId id) const {
    auto it = reviewIndex_.find(id);
    return it == reviewIndex_.end() ? nullptr : &reviews_[it->second];
}

std::optional<Uid> EvidenceMap::epsilon(ReviewId id) const {
    const Review* r = review(id);
    if (r == nullptr)
        return std::nullopt;
    return r->uid;
}

std::optional<Address> EvidenceMap::pi(Uid uid) const {
    const Interaction* it = interaction(uid);
    if (it == nullptr)
        return std::nullopt;
    return it->service;
}

const std::vector<ReviewId>& EvidenceMap::feedbacks_of(Uid uid) const {
    static const std::vector<ReviewId> kEmpty;
    auto it = reverseEpsilon_.find(uid);
    return it == reverseEpsilon_.end() ? kEmpty : it->second;
}

std::size_t EvidenceMap::rank_of(Uid i, ReviewId x) const {
    const auto& fbs = feedbacks_of(i);
    auto it = std::find(fbs.begin(), fbs.end(), x);
    if (it == fbs.end())
        throw NotAFeedbackOf("review " + std::to_string(x.block) + ":" +
                             std::to_string(x.index) + " is not a feedback of interaction " +
                             std::to_string(i));
    return static_cast<std::size_t>(it - fbs.begin());
}

const std::vector<Uid>& EvidenceMap::interactions_of_service(const Address& service) const {
    auto it = serviceIndex_.find(service);
    if (it == serviceIndex_.end())
        throw UnknownService("no interaction belongs to service " + service);
    return it->second;
}

std::set<ReviewId> EvidenceMap::feedbacks_for_service(const Address& service) const {
    std::set<ReviewId> out;
    for (Uid uid : interactions_of_service(service))
        for (const ReviewId& x : feedbacks_of(uid))
            out.insert(x);
    return out;
}

std::vector<Address> EvidenceMap::services() const {
    std::vector<Address> out;
    out.reserve(serviceIndex_.size());
    for (const auto& [service, uids] : serviceIndex_)
        out.push_back(service);
    return out;
}

bool EvidenceMap::has_service(const Address& service) const {
    return serviceIndex_.count(service) != 0;
}

// --- traces -------------------------------------------------------------------

void FeedbackTrace::insert(TraceEntry entry) {
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), entry.interaction,
                                [](const TraceEntry& e, Uid uid) { return e.interaction < uid; });
    if (pos != entries_.end() && pos->interaction == entry.interaction)
        throw std::invalid_argument("trace already covers interaction " +
                                    std::to_string(entry.interaction));
    entries_.insert(pos, std::move(entry));
}

const TraceEntry* FeedbackTrace::find(Uid interaction) const {
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), interaction,
                                [](const TraceEntry& e, Uid uid) { return e.interaction < uid; });
    if (pos == entries_.end() || pos->interaction != interaction)
        return nullptr;
    return &*pos;
}

bool trace_leq(const FeedbackTrace& a, const FeedbackTrace& b) {
    for (const TraceEntry& ea : a.entries()) {
        const TraceEntry* eb = b.find(ea.interaction);
        if (eb == nullptr || eb->review != ea.review)
            return false;
    }
    return true;
}

// --- enumeration ---------------------------------------------------------------

MaximalTraceEnumerator::MaximalTraceEnumerator(const EvidenceMap& map, std::vector<Uid> context)
    : map_(map) {
    std::sort(context.begin(), context.end());
    context.erase(std::unique(context.begin(), context.end()), context.end());
    for (Uid uid : context) {
        const std::size_t n = map_.feedbacks_of(uid).size();
        if (n == 0)
            continue;  // unreviewed interactions contribute nothing
        domain_.push_back(uid);
        // Saturating product keeps counts meaningful for cap checks even
        // when the true number of traces overflows.
        if (traceCount_ > std::numeric_limits<std::uint64_t>::max() / n)
            traceCount_ = std::numeric_limits<std::uint64_t>::max();
        else
            traceCount_ *= n;
    }
    counters_.assign(domain_.size(), 0);
}

bool MaximalTraceEnumerator::next(FeedbackTrace& out) {
    if (exhausted_)
        return false;
    out = FeedbackTrace{};
    for (std::size_t k = 0; k < domain_.size(); ++k) {
        const Uid uid = domain_[k];
        const Interaction& it = *map_.interaction(uid);
        const ReviewId x = map_.feedbacks_of(uid)[counters_[k]];
        out.insert(TraceEntry{uid, it.time, x, map_.review(x)->rating});
    }
    // Odometer increment, least significant digit last.
    for (std::size_t k = domain_.size(); k-- > 0;) {
        if (++counters_[k] < map_.feedbacks_of(domain_[k]).size())
            return true;
        counters_[k] = 0;
    }
    exhausted_ = true;  // wrapped around (or the domain is empty)
    return true;
}

void MaximalTraceEnumerator::reset() {
    counters_.assign(domain_.size(), 0);
    exhausted_ = false;
}

}  // namespace trustledger
