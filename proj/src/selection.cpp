// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/selection.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace trustledger {

namespace {

void check_q(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("selection parameter q must lie in (0, 1)");
}

}  // namespace

EvidenceSelection EvidenceSelection::deterministic() {
    return {SelectionKind::Deterministic, 0.0};
}

EvidenceSelection EvidenceSelection::uniform() {
    return {SelectionKind::Uniform, 0.0};
}

EvidenceSelection EvidenceSelection::fresh_biased(double q) {
    check_q(q);
    return {SelectionKind::FreshBiased, q};
}

EvidenceSelection EvidenceSelection::geometric(double q) {
    check_q(q);
    return {SelectionKind::Geometric, q};
}

std::string EvidenceSelection::name() const {
    char buf[32];
    switch (kind_) {
    case SelectionKind::Deterministic:
        return "deterministic";
    case SelectionKind::Uniform:
        return "uniform";
    case SelectionKind::FreshBiased:
        std::snprintf(buf, sizeof buf, "fresh(%g)", q_);
        return buf;
    case SelectionKind::Geometric:
        std::snprintf(buf, sizeof buf, "geometric(%g)", q_);
        return buf;
    }
    return "unknown";
}

std::vector<double> EvidenceSelection::rank_weights(std::size_t n) const {
    std::vector<double> w(n, 0.0);
    if (n == 0)
        return w;
    switch (kind_) {
    case SelectionKind::Deterministic:
        w[n - 1] = 1.0;
        break;
    case SelectionKind::Uniform:
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
        break;
    case SelectionKind::FreshBiased: {
        const double norm = (1.0 - q_) / (1.0 - std::pow(q_, static_cast<double>(n)));
        for (std::size_t k = 0; k < n; ++k)
            w[k] = std::pow(q_, static_cast<double>(n - 1 - k)) * norm;
        break;
    }
    case SelectionKind::Geometric: {
        const double norm = (1.0 - q_) / (1.0 - std::pow(q_, static_cast<double>(n)));
        for (std::size_t k = 0; k < n; ++k)
            w[k] = std::pow(q_, static_cast<double>(k)) * norm;
        break;
    }
    }
    return w;
}

double EvidenceSelection::weight(const EvidenceMap& map, Uid i, ReviewId x) const {
    const std::size_t rank = map.rank_of(i, x);  // throws NotAFeedbackOf
    const std::size_t n = map.feedbacks_of(i).size();
    switch (kind_) {
    case SelectionKind::Deterministic:
        return rank == n - 1 ? 1.0 : 0.0;
    case SelectionKind::Uniform:
        return 1.0 / static_cast<double>(n);
    default:
        return rank_weights(n)[rank];
    }
}

FeedbackTrace EvidenceSelection::select_trace(const EvidenceMap& map,
                                              const std::vector<Uid>& context,
                                              std::mt19937_64& rng) const {
    std::vector<Uid> domain = context;
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

    FeedbackTrace trace;
    for (Uid uid : domain) {
        const auto& feedbacks = map.feedbacks_of(uid);
        if (feedbacks.empty())
            continue;
        const std::vector<double> w = rank_weights(feedbacks.size());
        // Inverse CDF walk; the final rank absorbs any rounding slack.
        const double u = unit_double(rng);
        double acc = 0.0;
        std::size_t pick = feedbacks.size() - 1;
        for (std::size_t k = 0; k < feedbacks.size(); ++k) {
            acc += w[k];
            if (u < acc) {
                pick = k;
                break;
            }
        }
        const Interaction& it = *map.interaction(uid);
        const ReviewId x = feedbacks[pick];
        trace.insert(TraceEntry{uid, it.time, x, map.review(x)->rating});
    }
    return trace;
}

EvidenceSelection parse_selection(const std::string& text) {
    if (text == "deterministic")
        return EvidenceSelection::deterministic();
    if (text == "uniform")
        return EvidenceSelection::uniform();
    for (const char* prefix : {"fresh(", "geometric("}) {
        const std::size_t plen = std::string(prefix).size();
        if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
            const std::string arg = text.substr(plen, text.size() - plen - 1);
            std::size_t used = 0;
            double q = 0.0;
            try {
                q = std::stod(arg, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad selection parameter: " + text);
            }
            if (used != arg.size())
                throw std::invalid_argument("bad selection parameter: " + text);
            return prefix[0] == 'f' ? EvidenceSelection::fresh_biased(q)
                                    : EvidenceSelection::geometric(q);
        }
    }
    throw std::invalid_argument("unknown selection: " + text);
}

}  // namespace trustledger
