// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#include <trustledger/providers.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trustledger {

const char* to_string(DetectionKind k) {
    switch (k) {
    case DetectionKind::FeedbackSpike: return "feedback_spike";
    case DetectionKind::SerialNegative: return "serial_negative";
    case DetectionKind::ShortLivedAccount: return "short_lived_account";
    }
    return "unknown";
}

TrustProvider::TrustProvider(TrustProviderConfig cfg, SubmitFn submit)
    : cfg_(std::move(cfg)),
      submit_(std::move(submit)),
      mechanism_(parse_mechanism(cfg_.mechanism, RatingProjection{cfg_.ratingThreshold},
                                 cfg_.emptyTraceValue)),
      selection_(parse_selection(cfg_.selection)) {
    if (cfg_.policy == RecomputePolicy::EveryNBlocks && cfg_.everyN == 0)
        throw std::invalid_argument("TrustProvider: everyN must be positive");
}

void TrustProvider::ingest_block(const Block& b) {
    if (lastBlock_ && b.number != *lastBlock_ + 1)
        throw std::invalid_argument("ingest_block: expected block " +
                                    std::to_string(*lastBlock_ + 1) + ", got " +
                                    std::to_string(b.number));
    lastBlock_ = b.number;

    for (const LedgerEvent& e : b.events) {
        events_.push_back(e);
        dirty_ = true;
        auto touch = [&](const Address& account) {
            auto [it, inserted] = footprints_.try_emplace(
                account, Footprint{e.time.block, e.time.block, {}, 0});
            if (!inserted)
                it->second.lastBlock = e.time.block;
        };
        if (const auto* ie = std::get_if<InteractionEventPayload>(&e.payload)) {
            touch(ie->user);
        } else if (const auto* fe = std::get_if<FeedbackEventPayload>(&e.payload)) {
            touch(fe->submitter);
            auto& fp = footprints_[fe->submitter];
            fp.feedbackServices.insert(fe->delegator);
            ++fp.feedbackCount;
            feedbackLog_.push_back({e.time.block, fe->submitter, fe->delegator, fe->rating,
                                    fe->uid});
        }
    }

    switch (cfg_.policy) {
    case RecomputePolicy::EveryBlock:
        recompute(b.number);
        break;
    case RecomputePolicy::EveryNBlocks:
        if (b.number % cfg_.everyN == 0)
            recompute(b.number);
        break;
    case RecomputePolicy::OnDemand:
        break;
    }
}

const EvidenceMap& TrustProvider::ensure_map() {
    if (dirty_) {
        map_ = EvidenceMap::build(events_);
        dirty_ = false;
    }
    return map_;
}

const EvidenceMap& TrustProvider::evidence() {
    return ensure_map();
}

std::set<Address> TrustProvider::flagged_accounts() const {
    std::set<Address> flagged;
    if (cfg_.detectors.serialEnabled)
        for (const auto& r : detect_serial_negative(cfg_.detectors.serialMinRun))
            flagged.insert(r.subject);
    if (cfg_.detectors.shortLivedEnabled)
        for (const auto& r : detect_short_lived(cfg_.detectors.minLifetimeBlocks))
            flagged.insert(r.subject);
    return flagged;
}

double TrustProvider::compute_score(const Address& service,
                                    const std::optional<std::vector<Uid>>& subset) {
    const EvidenceMap& map = ensure_map();
    if (!map.has_service(service))
        return cfg_.emptyTraceValue;

    std::optional<std::vector<Uid>> effective = subset;
    if (cfg_.excludeFlagged) {
        const std::set<Address> flagged = flagged_accounts();
        if (!flagged.empty()) {
            std::vector<Uid> kept;
            const std::vector<Uid>& base =
                subset ? *subset : map.interactions_of_service(service);
            for (Uid uid : base) {
                const Interaction* it = map.interaction(uid);
                if (it != nullptr && flagged.count(it->user) == 0)
                    kept.push_back(uid);
            }
            effective = std::move(kept);
        }
    }
    return sigma_service(map, service, effective, mechanism_, selection_, cfg_.enumerationCap)
        .value;
}

void TrustProvider::recompute(std::uint64_t blockNumber) {
    const EvidenceMap& map = ensure_map();
    for (const Address& service : map.services()) {
        const double score = compute_score(service, std::nullopt);
        trajectories_[service].emplace_back(blockNumber, score);

        auto it = lastPushed_.find(service);
        const double prev = it == lastPushed_.end() ? cfg_.emptyTraceValue : it->second;
        if (submit_ && std::abs(score - prev) > cfg_.updateEpsilon) {
            Transaction tx;
            tx.sender = cfg_.address;
            tx.payload = ScoreUpdatePayload{service, score};
            submit_(std::move(tx));
            lastPushed_[service] = score;
        }
    }
}

double TrustProvider::answer_query(const Address& service,
                                   const std::optional<std::vector<Uid>>& subset) {
    if (subset || cfg_.policy == RecomputePolicy::OnDemand)
        return compute_score(service, subset);
    auto it = trajectories_.find(service);
    if (it == trajectories_.end() || it->second.empty())
        return compute_score(service, std::nullopt);
    return it->second.back().second;
}

std::vector<DetectionReport> TrustProvider::run_detectors() const {
    std::vector<DetectionReport> out;
    const DetectorConfig& d = cfg_.detectors;
    if (d.spikeEnabled) {
        try {
            auto r = detect_spike(d.spikeWindow, d.spikeThreshold);
            out.insert(out.end(), r.begin(), r.end());
        } catch (const InsufficientHistory&) {
            // not enough chain yet; nothing to report
        }
    }
    if (d.serialEnabled) {
        auto r = detect_serial_negative(d.serialMinRun);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (d.shortLivedEnabled) {
        auto r = detect_short_lived(d.minLifetimeBlocks);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::vector<DetectionReport> TrustProvider::detect_spike(std::uint64_t windowBlocks,
                                                         double threshold) const {
    if (windowBlocks == 0)
        throw std::invalid_argument("detect_spike: window must be positive");
    const std::uint64_t last = lastBlock_.value_or(0);
    if (last < 2 * windowBlocks)
        throw InsufficientHistory("detect_spike: need at least two windows of history");

    // Window w covers blocks [1 + w*windowBlocks, (w+1)*windowBlocks]; the
    // tail window may be partial.
    const std::uint64_t nWindows = (last + windowBlocks - 1) / windowBlocks;
    const RatingProjection rho{cfg_.ratingThreshold};

    std::map<Address, std::vector<std::uint64_t>> counts;
    for (const FeedbackRecord& f : feedbackLog_) {
        if (f.block == 0 || rho(f.rating) != 0)
            continue;  // only negative feedback counts toward a spike
        auto& c = counts.try_emplace(f.service, std::vector<std::uint64_t>(nWindows, 0))
                      .first->second;
        ++c[(f.block - 1) / windowBlocks];
    }

    std::vector<DetectionReport> reports;
    for (const auto& [service, c] : counts) {
        for (std::uint64_t w = 1; w < nWindows; ++w) {
            double trailing = 0.0;
            for (std::uint64_t p = 0; p < w; ++p)
                trailing += static_cast<double>(c[p]);
            trailing /= static_cast<double>(w);
            // The floor of one negative per window stops an all-quiet
            // history from flagging the first ordinary complaint.
            if (static_cast<double>(c[w]) > threshold * std::max(trailing, 1.0)) {
                reports.push_back({DetectionKind::FeedbackSpike, service, "",
                                   1 + w * windowBlocks,
                                   std::min(last, (w + 1) * windowBlocks), c[w], trailing});
            }
        }
    }
    return reports;
}

std::vector<DetectionReport> TrustProvider::detect_serial_negative(std::uint64_t minRun) const {
    if (minRun == 0)
        throw std::invalid_argument("detect_serial_negative: minRun must be positive");
    const RatingProjection rho{cfg_.ratingThreshold};

    struct Run {
        std::uint64_t length = 0, first = 0, last = 0;
        std::uint64_t bestLength = 0, bestFirst = 0, bestLast = 0;
    };
    std::map<std::pair<Address, Address>, Run> runs;
    for (const FeedbackRecord& f : feedbackLog_) {
        Run& r = runs[{f.submitter, f.service}];
        if (rho(f.rating) == 0) {
            if (r.length == 0)
                r.first = f.block;
            ++r.length;
            r.last = f.block;
            if (r.length > r.bestLength) {
                r.bestLength = r.length;
                r.bestFirst = r.first;
                r.bestLast = r.last;
            }
        } else {
            r.length = 0;
        }
    }

    std::vector<DetectionReport> reports;
    for (const auto& [key, r] : runs)
        if (r.bestLength >= minRun)
            reports.push_back({DetectionKind::SerialNegative, key.first, key.second, r.bestFirst,
                               r.bestLast, r.bestLength, 0.0});
    return reports;
}

std::vector<DetectionReport> TrustProvider::detect_short_lived(
    std::uint64_t minLifetimeBlocks) const {
    std::vector<DetectionReport> reports;
    for (const auto& [account, fp] : footprints_) {
        if (fp.feedbackCount == 0 || fp.feedbackServices.size() != 1)
            continue;
        if (fp.lastBlock - fp.firstBlock >= minLifetimeBlocks)
            continue;
        reports.push_back({DetectionKind::ShortLivedAccount, account,
                           *fp.feedbackServices.begin(), fp.firstBlock, fp.lastBlock,
                           fp.feedbackCount, 0.0});
    }
    return reports;
}

}  // namespace trustledger
