#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "trustrecon/sim_core.hpp"

namespace trustrecon {

struct StageConfig {
    std::size_t stage_count = 3;   // K, stages that prune
    double mix_weight = 0.5;       // α, weight of the continuous score
    std::size_t stage_dims = 64;   // leading baseline coordinates seen by each stage
    std::size_t table_stages = 5;  // rows emitted by overhead_accuracy_table
    /// Replaces every θ_k when set. Used by tests to force pruning.
    std::optional<double> threshold_override;

    /// θ_k = 0.5 + 0.1·k for 1-based k.
    double threshold(std::size_t k) const;
    void validate(std::size_t embedding_dim) const;
};

struct StageOutcome {
    std::size_t stage_index = 0;
    std::set<DeviceId> surviving;
    std::map<DeviceId, double> stage_scores;  // combined score of every device evaluated this stage
    std::size_t cumulative_overhead = 0;
};

struct OverheadRow {
    std::size_t stage = 0;
    std::size_t overhead = 0;
    double accuracy = 0.0;
};

/// Cosine trust on the first `stage_dims` coordinates with noise variance σ²·(k+1).
double stage_trust(const DeviceRecord& device, std::size_t k, double noise_std, std::size_t stage_dims, Rng& rng);

/// α·continuous + (1−α)·staged.
double combine_trust(double continuous, double staged, double alpha);

std::vector<StageOutcome> run_chain_of_trust(const SimConfig& cfg, const StageConfig& stage_cfg,
                                             const std::vector<DeviceRecord>& population, const TrustLog& trust_log);

/// Fraction of devices with (score ≥ threshold) == (label == 1). Key sets must match.
double classification_accuracy(const std::map<DeviceId, double>& scores, const std::map<DeviceId, int>& labels,
                               double threshold);

/// One row per stage 1..table_stages; pruning only applies through stage K.
std::vector<OverheadRow> overhead_accuracy_table(const SimConfig& cfg, const StageConfig& stage_cfg,
                                                 const std::vector<DeviceRecord>& population,
                                                 const TrustLog& trust_log);

}  // namespace trustrecon
