// trustledger: evidence-based trust scoring over a simulated block ledger
// Copyright 2026 The trustledger Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <trustledger/contracts.hpp>
#include <trustledger/scoring.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace trustledger {

class InsufficientHistory : public Error {
    using Error::Error;
};

enum class RecomputePolicy : std::uint8_t { EveryBlock, EveryNBlocks, OnDemand };

struct DetectorConfig {
    bool spikeEnabled = false;
    std::uint64_t spikeWindow = 5;    // blocks per window
    double spikeThreshold = 5.0;      // multiple of the trailing per-window mean

    bool serialEnabled = false;
    std::uint64_t serialMinRun = 3;   // consecutive negatives from one user on one service

    bool shortLivedEnabled = false;
    std::uint64_t minLifetimeBlocks = 10;
};

enum class DetectionKind : std::uint8_t { FeedbackSpike, SerialNegative, ShortLivedAccount };

const char* to_string(DetectionKind k);

struct DetectionReport {
    DetectionKind kind;
    Address subject;      // the service (spike) or account (serial, short-lived)
    Address counterpart;  // service involved when the subject is an account
    std::uint64_t firstBlock = 0;
    std::uint64_t lastBlock = 0;
    std::uint64_t count = 0;
    double baseline = 0.0;  // trailing mean the spike was measured against
};

struct TrustProviderConfig {
    Address address;
    TokenAmount queryFee = 0;
    std::string mechanism = "average";
    std::string selection = "deterministic";
    double emptyTraceValue = 0.5;
    std::int64_t ratingThreshold = 3;
    RecomputePolicy policy = RecomputePolicy::EveryBlock;
    std::uint64_t everyN = 1;
    // Cached scores are pushed on chain only when they moved by more than
    // this since the last push, to keep update traffic bounded.
    double updateEpsilon = 0.005;
    bool excludeFlagged = false;  // drop interactions of flagged accounts before scoring
    DetectorConfig detectors;
    std::uint64_t enumerationCap = 1'000'000;
};

// An off-chain reader of the chain. Consumes sealed blocks in order,
// maintains its own evidence state, answers score queries, pushes score
// updates back through the supplied submit hook, and watches the feedback
// stream for manipulation patterns. Two providers with the same
// configuration fed the same blocks produce bit-identical results; nothing
// here depends on wall clocks or private state.
class TrustProvider {
  public:
    using SubmitFn = std::function<void(Transaction)>;

    explicit TrustProvider(TrustProviderConfig cfg, SubmitFn submit = {});

    // Blocks must arrive in consecutive order; a gap or repeat throws
    // std::invalid_argument. The first block may be any height, so a
    // provider can attach to a chain mid-life.
    void ingest_block(const Block& b);

    // Current score of a service, honoring the recompute policy: cached
    // value when one is maintained, computed on the spot otherwise. Queries
    // restricted to a subset of interactions are always computed fresh.
    // Unknown services score the empty-trace value.
    double answer_query(const Address& service,
                        const std::optional<std::vector<Uid>>& subset = std::nullopt);

    // Every enabled detector; spike detection is skipped quietly while the
    // chain is shorter than two windows.
    std::vector<DetectionReport> run_detectors() const;

    std::vector<DetectionReport> detect_spike(std::uint64_t windowBlocks,
                                              double threshold) const;
    std::vector<DetectionReport> detect_serial_negative(std::uint64_t minRun) const;
    std::vector<DetectionReport> detect_short_lived(std::uint64_t minLifetimeBlocks) const;

    // (block, score) samples per service, one per recompute.
    const std::map<Address, std::vector<std::pair<std::uint64_t, double>>>& trajectories() const {
        return trajectories_;
    }

    const TrustProviderConfig& config() const { return cfg_; }
    std::optional<std::uint64_t> last_block() const { return lastBlock_; }
    const EvidenceMap& evidence();

  private:
    void recompute(std::uint64_t blockNumber);
    double compute_score(const Address& service, const std::optional<std::vector<Uid>>& subset);
    std::set<Address> flagged_accounts() const;
    const EvidenceMap& ensure_map();

    TrustProviderConfig cfg_;
    SubmitFn submit_;
    ScoringMechanism mechanism_;
    EvidenceSelection selection_;

    std::vector<LedgerEvent> events_;
    std::optional<std::uint64_t> lastBlock_;
    bool dirty_ = true;
    EvidenceMap map_;

    struct FeedbackRecord {
        std::uint64_t block = 0;
        Address submitter;
        Address service;
        std::int64_t rating = 0;
        Uid uid = 0;
    };
    std::vector<FeedbackRecord> feedbackLog_;

    struct Footprint {
        std::uint64_t firstBlock = 0;
        std::uint64_t lastBlock = 0;
        std::set<Address> feedbackServices;
        std::uint64_t feedbackCount = 0;
    };
    std::map<Address, Footprint> footprints_;

    std::map<Address, std::vector<std::pair<std::uint64_t, double>>> trajectories_;
    std::map<Address, double> lastPushed_;
};

}  // namespace trustledger
