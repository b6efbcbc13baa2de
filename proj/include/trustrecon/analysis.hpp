#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustrecon/recon.hpp"
#include "trustrecon/sim_core.hpp"

namespace trustrecon {

/// Symmetric N×N table, rows/columns in `ids` order.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    /// Throws DataError unless values is ids.size()² long.
    DistanceMatrix(std::vector<DeviceId> ids, std::vector<double> values);

    std::size_t size() const { return ids_.size(); }
    const std::vector<DeviceId>& ids() const { return ids_; }
    const std::vector<double>& values() const { return values_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }
    bool is_symmetric() const;

    bool operator==(const DistanceMatrix&) const = default;

private:
    std::vector<DeviceId> ids_;
    std::vector<double> values_;
};

enum class Metric { euclidean, cosine };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

DistanceMatrix pairwise_distances(const EmbeddingMap& embeddings, Metric metric = Metric::euclidean);

/// Mean of the N(N−1) off-diagonal entries; N ≥ 2.
double mean_offdiagonal(const DistanceMatrix& matrix);

struct AgentPoint {
    DeviceId device_id = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double std_a = 0.0;
    double std_b = 0.0;
};

struct AgentComparison {
    std::vector<AgentPoint> points;
    /// Pearson r of mean_a vs mean_b; empty when either side has zero variance.
    std::optional<double> correlation;

    bool degenerate() const { return !correlation.has_value(); }
    double max_abs_mean_gap() const;
};

AgentComparison agent_mean_comparison(const EmbeddingMap& embeddings);

/// Replicate r runs with seed base + r·stride. `resample_noise` keeps the
/// base-seed population and redraws only the agents' noise; `fresh_population`
/// also redraws labels and baselines.
enum class ReplicateMode { resample_noise, fresh_population };

struct ReplicateEntry {
    std::size_t replicate = 0;  // 1-based
    std::uint64_t seed = 0;
    double mean_offdiag = 0.0;
};

struct ReplicateReport {
    std::vector<ReplicateEntry> entries;

    double mean() const;
    /// (max − min) / mean.
    double relative_spread() const;
    /// max / min.
    double ratio() const;
};

/// Two-agent direct-sum embeddings for one simulated run.
EmbeddingMap simulate_embeddings(const SimConfig& cfg, const std::vector<DeviceRecord>& population);

ReplicateReport replicate_benchmark(const SimConfig& base_cfg, std::size_t replicates, std::uint64_t seed_stride = 1,
                                    Metric metric = Metric::euclidean,
                                    ReplicateMode mode = ReplicateMode::resample_noise);

}  // namespace trustrecon
