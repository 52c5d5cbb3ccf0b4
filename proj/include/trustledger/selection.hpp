// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/evidence.hpp>

#include <random>
#include <string>
#include <vector>

namespace trustledger {

enum class SelectionKind : std::uint8_t { Deterministic, Uniform, FreshBiased, Geometric };

// Assigns each interaction a probability distribution over its feedbacks.
// Ranks count from 0 = oldest feedback to N-1 = newest. All four schemes
// sum to exactly 1 over the N feedbacks of an interaction:
//
//   deterministic   point mass on the newest feedback
//   uniform         1/N each
//   fresh(q)        q^(N-1-k) * (1-q) / (1-q^N)   favors newer feedbacks
//   geometric(q)    q^k * (1-q) / (1-q^N)         favors older feedbacks
//
// q must lie strictly inside (0, 1); the closed forms above degenerate at
// the endpoints.
class EvidenceSelection {
  public:
    static EvidenceSelection deterministic();
    static EvidenceSelection uniform();
    static EvidenceSelection fresh_biased(double q);  // throws std::invalid_argument on bad q
    static EvidenceSelection geometric(double q);

    SelectionKind kind() const { return kind_; }
    double q() const { return q_; }
    std::string name() const;

    // Weight of feedback x among the feedbacks of interaction i.
    // Throws NotAFeedbackOf if x is not evidence about i.
    double weight(const EvidenceMap& map, Uid i, ReviewId x) const;

    // Full distribution over the n feedbacks of an interaction, by rank.
    std::vector<double> rank_weights(std::size_t n) const;

    // Samples one maximal trace over the reviewed interactions of the
    // context, drawing each interaction's feedback independently from this
    // distribution. Uses raw engine output only, so the draw sequence is
    // identical across platforms.
    FeedbackTrace select_trace(const EvidenceMap& map, const std::vector<Uid>& context,
                               std::mt19937_64& rng) const;

  private:
    EvidenceSelection(SelectionKind kind, double q) : kind_(kind), q_(q) {}

    SelectionKind kind_;
    double q_;
};

// Parses "deterministic", "uniform", "fresh(0.5)", "geometric(0.7)".
// Throws std::invalid_argument on anything else.
EvidenceSelection parse_selection(const std::string& text);

}  // namespace trustledger
