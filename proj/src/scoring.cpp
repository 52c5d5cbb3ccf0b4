// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/scoring.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace trustledger {

double mu_average(const FeedbackTrace& trace, RatingProjection rho) {
    if (trace.empty())
        throw EmptyTrace("mu_average: empty trace");
    std::int64_t sum = 0;
    for (const TraceEntry& e : trace.entries())
        sum += rho(e.rating);
    return static_cast<double>(sum) / static_cast<double>(trace.size());
}

double mu_latest(const FeedbackTrace& trace, RatingProjection rho) {
    if (trace.empty())
        throw EmptyTrace("mu_latest: empty trace");
    const TraceEntry* latest = &trace.entries().front();
    for (const TraceEntry& e : trace.entries())
        if (latest->interactionTime < e.interactionTime)
            latest = &e;
    return static_cast<double>(rho(latest->rating));
}

ScoringMechanism::ScoringMechanism(std::string name, EvalFn fn, double emptyTraceValue)
    : name_(std::move(name)), fn_(std::move(fn)), emptyTraceValue_(emptyTraceValue) {
    if (!fn_)
        throw std::invalid_argument("ScoringMechanism: evaluator must be callable");
}

ScoringMechanism average_mechanism(RatingProjection rho, double emptyTraceValue) {
    return {"average", [rho](const FeedbackTrace& t) { return mu_average(t, rho); },
            emptyTraceValue};
}

ScoringMechanism latest_mechanism(RatingProjection rho, double emptyTraceValue) {
    return {"latest", [rho](const FeedbackTrace& t) { return mu_latest(t, rho); },
            emptyTraceValue};
}

ScoringMechanism parse_mechanism(const std::string& name, RatingProjection rho,
                                 double emptyTraceValue) {
    if (name == "average")
        return average_mechanism(rho, emptyTraceValue);
    if (name == "latest")
        return latest_mechanism(rho, emptyTraceValue);
    throw std::invalid_argument("unknown scoring mechanism: " + name);
}

ScoreResult sigma_bruteforce(const EvidenceMap& map, const std::vector<Uid>& context,
                             const ScoringMechanism& mechanism, const EvidenceSelection& selection,
                             std::uint64_t enumerationCap) {
    MaximalTraceEnumerator enumerator(map, context);
    if (enumerator.trace_count() > enumerationCap)
        throw EnumerationCapExceeded("context admits " + std::to_string(enumerator.trace_count()) +
                                     " maximal traces, cap is " +
                                     std::to_string(enumerationCap));

    // Weight of every feedback of every domain interaction, precomputed so
    // the per-trace product is a lookup, not a rank search.
    std::map<ReviewId, double> weightOf;
    for (Uid uid : enumerator.domain()) {
        const auto& feedbacks = map.feedbacks_of(uid);
        const std::vector<double> w = selection.rank_weights(feedbacks.size());
        for (std::size_t k = 0; k < feedbacks.size(); ++k)
            weightOf[feedbacks[k]] = w[k];
    }

    std::size_t contextSize = 0;
    {
        std::vector<Uid> distinct = context;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (Uid uid : distinct)
            if (map.interaction(uid) != nullptr)
                ++contextSize;
    }

    double score = 0.0;
    std::uint64_t traces = 0;
    FeedbackTrace trace;
    while (enumerator.next(trace)) {
        double w = 1.0;
        for (const TraceEntry& e : trace.entries())
            w *= weightOf.at(e.review);
        score += w * mechanism(trace);
        ++traces;
    }
    // The exact expectation lies in [0, 1]; summation error can leak an ulp
    // past either end, which downstream range checks would reject.
    score = std::clamp(score, 0.0, 1.0);
    return {score, traces, contextSize, enumerator.domain().size()};
}

ScoreResult sigma_service(const EvidenceMap& map, const Address& service,
                          const std::optional<std::vector<Uid>>& subset,
                          const ScoringMechanism& mechanism, const EvidenceSelection& selection,
                          std::uint64_t enumerationCap) {
    const std::vector<Uid>& all = map.interactions_of_service(service);  // throws UnknownService
    std::vector<Uid> context;
    if (subset) {
        std::set<Uid> wanted(subset->begin(), subset->end());
        for (Uid uid : all)
            if (wanted.count(uid) != 0)
                context.push_back(uid);
    } else {
        context = all;
    }
    return sigma_bruteforce(map, context, mechanism, selection, enumerationCap);
}

void OnlineAverageScore::observe(Uid interaction, std::int64_t rating) {
    const int v = rho_(rating);
    auto [it, inserted] = last_.try_emplace(interaction, v);
    if (inserted) {
        sum_ += v;
    } else {
        sum_ += v - it->second;  // newer feedback replaces the old projection
        it->second = v;
    }
}

double OnlineAverageScore::value() const {
    if (last_.empty())
        return emptyTraceValue_;
    return static_cast<double>(sum_) / static_cast<double>(last_.size());
}

LimitResult sigma_limit(const EvidenceMap& map, const std::vector<Uid>& order,
                        const ScoringMechanism& mechanism, const EvidenceSelection& selection,
                        double tol, std::size_t maxSteps, std::uint64_t enumerationCap) {
    if (tol <= 0.0)
        throw std::invalid_argument("sigma_limit: tol must be positive");

    LimitResult result;
    result.value = mechanism.empty_trace_value();
    std::optional<double> prev;
    int stable = 0;

    std::vector<Uid> prefix;
    prefix.reserve(std::min(order.size(), maxSteps));
    for (std::size_t n = 0; n < order.size() && n < maxSteps; ++n) {
        prefix.push_back(order[n]);
        const double s =
            sigma_bruteforce(map, prefix, mechanism, selection, enumerationCap).value;
        ++result.steps;
        result.value = s;
        if (prev && std::abs(s - *prev) < tol) {
            if (++stable >= 3) {
                result.converged = true;
                return result;
            }
        } else {
            stable = 0;
        }
        prev = s;
    }
    return result;  // stream or budget exhausted without settling
}

}  // namespace trustledger
