// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/evidence.hpp>
#include <trustledger/selection.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trustledger {

class EnumerationCapExceeded : public Error {
    using Error::Error;
};

class EmptyTrace : public Error {
    using Error::Error;
};

// Collapses an integer rating to 0 or 1. Ratings at or above the threshold
// count as positive experiences.
struct RatingProjection {
    std::int64_t threshold = 3;

    int operator()(std::int64_t rating) const { return rating >= threshold ? 1 : 0; }
};

// Trace evaluators. Both are bounded by 1, which keeps every recommendation
// score they induce inside [0, 1]. They demand a non-empty trace; the empty
// trace is handled by the mechanism wrapper below.
double mu_average(const FeedbackTrace& trace, RatingProjection rho);  // mean of projections
double mu_latest(const FeedbackTrace& trace, RatingProjection rho);   // newest interaction only

// A trace evaluator plus the value assigned to the empty trace by
// convention. 0.5 encodes "no evidence, no opinion".
class ScoringMechanism {
  public:
    using EvalFn = std::function<double(const FeedbackTrace&)>;

    ScoringMechanism(std::string name, EvalFn fn, double emptyTraceValue = 0.5);

    double operator()(const FeedbackTrace& trace) const {
        return trace.empty() ? emptyTraceValue_ : fn_(trace);
    }

    double empty_trace_value() const { return emptyTraceValue_; }
    const std::string& name() const { return name_; }

  private:
    std::string name_;
    EvalFn fn_;
    double emptyTraceValue_;
};

ScoringMechanism average_mechanism(RatingProjection rho = {}, double emptyTraceValue = 0.5);
ScoringMechanism latest_mechanism(RatingProjection rho = {}, double emptyTraceValue = 0.5);

// Parses "average" or "latest". Throws std::invalid_argument otherwise.
ScoringMechanism parse_mechanism(const std::string& name, RatingProjection rho = {},
                                 double emptyTraceValue = 0.5);

struct ScoreResult {
    double value = 0.0;
    std::uint64_t traceCount = 0;   // maximal traces enumerated
    std::size_t contextSize = 0;    // distinct interactions considered
    std::size_t domainSize = 0;     // of which reviewed (the trace domain)
};

// Recommendation score of a context: expected mechanism value over all
// maximal traces, each weighted by the product of its feedbacks' selection
// probabilities. Exact but exponential in the context size, hence the cap:
// contexts with more maximal traces than `enumerationCap` throw
// EnumerationCapExceeded rather than silently approximating. The result is
// clamped to [0, 1] to absorb summation error; mechanisms are expected to
// stay inside that range themselves.
ScoreResult sigma_bruteforce(const EvidenceMap& map, const std::vector<Uid>& context,
                             const ScoringMechanism& mechanism, const EvidenceSelection& selection,
                             std::uint64_t enumerationCap = 1'000'000);

// Score of a service: the context is the service's interactions, optionally
// intersected with a caller-supplied subset. Throws UnknownService when no
// interaction maps to the service.
ScoreResult sigma_service(const EvidenceMap& map, const Address& service,
                          const std::optional<std::vector<Uid>>& subset,
                          const ScoringMechanism& mechanism, const EvidenceSelection& selection,
                          std::uint64_t enumerationCap = 1'000'000);

// Constant-work-per-update path equivalent to sigma_bruteforce with the
// averaging mechanism and deterministic (newest feedback) selection. Feed it
// feedbacks in chain order; a repeated interaction replaces that
// interaction's previous projection instead of adding a term.
class OnlineAverageScore {
  public:
    explicit OnlineAverageScore(RatingProjection rho = {}, double emptyTraceValue = 0.5)
        : rho_(rho), emptyTraceValue_(emptyTraceValue) {}

    void observe(Uid interaction, std::int64_t rating);
    double value() const;
    std::size_t interaction_count() const { return last_.size(); }

  private:
    RatingProjection rho_;
    double emptyTraceValue_;
    std::map<Uid, int> last_;  // interaction -> current projection
    std::int64_t sum_ = 0;     // of current projections, exact
};

struct LimitResult {
    bool converged = false;
    double value = 0.0;      // last score evaluated
    std::size_t steps = 0;   // prefixes evaluated
};

// Score of a growing interaction stream: evaluates the prefixes order[0..n)
// and stops once the score moved by less than `tol` for three consecutive
// steps. Reports NonConvergent (converged = false) when the stream or the
// step budget runs out first; oscillating mechanisms like mu_latest on an
// alternating stream do exactly that.
LimitResult sigma_limit(const EvidenceMap& map, const std::vector<Uid>& order,
                        const ScoringMechanism& mechanism, const EvidenceSelection& selection,
                        double tol, std::size_t maxSteps,
                        std::uint64_t enumerationCap = 1'000'000);

}  // namespace trustledger
