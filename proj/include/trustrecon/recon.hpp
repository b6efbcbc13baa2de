#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "trustrecon/sim_core.hpp"

namespace trustrecon {

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;  // population (divisor n)
    double median = 0.0;
    double iqr = 0.0;  // type-7 quantiles
};

/// Requires at least two samples.
SummaryStats summary_stats(std::span<const double> series);

/// Two agents' gap-free series for one device, equal length.
struct AlignedSeries {
    Series a;
    Series b;
};

using AlignedSeriesMap = std::map<DeviceId, AlignedSeries>;

/// Direct-sum embedding [series_A | series_B | mean_A, std_A, mean_B, std_B].
class ReconstructedEmbedding {
public:
    static constexpr std::size_t kStatCount = 4;

    ReconstructedEmbedding() = default;
    /// Throws InputError unless features.size() == 2n + 4 with n >= 2.
    ReconstructedEmbedding(DeviceId device_id, std::vector<double> features);

    DeviceId device_id() const { return device_id_; }
    const std::vector<double>& features() const { return features_; }
    std::size_t dimension() const { return features_.size(); }
    /// T+1, the per-agent series length.
    std::size_t horizon() const { return (features_.size() - kStatCount) / 2; }

    std::span<const double> series_a() const { return {features_.data(), horizon()}; }
    std::span<const double> series_b() const { return {features_.data() + horizon(), horizon()}; }
    double mean_a() const { return features_[2 * horizon()]; }
    double std_a() const { return features_[2 * horizon() + 1]; }
    double mean_b() const { return features_[2 * horizon() + 2]; }
    double std_b() const { return features_[2 * horizon() + 3]; }

    bool operator==(const ReconstructedEmbedding&) const = default;

private:
    DeviceId device_id_ = 0;
    std::vector<double> features_;
};

using EmbeddingMap = std::map<DeviceId, ReconstructedEmbedding>;

/// Dimension of the direct-sum embedding for a series length of `horizon`.
constexpr std::size_t embedding_dimension(std::size_t horizon) { return 2 * horizon + ReconstructedEmbedding::kStatCount; }

ReconstructedEmbedding reconstruct_embedding(DeviceId device_id, const AlignedSeries& aligned);
EmbeddingMap reconstruct_all(const AlignedSeriesMap& aligned);

/// Keeps the series segments and recomputes the trailing statistics.
/// A projection: applying it twice equals applying it once.
EmbeddingMap reconstruction_map(const EmbeddingMap& embeddings);

/// x / sqrt(x² + mσ²), the expected centred similarity for a baseline of norm x.
double f_similarity(double norm, std::size_t dim, double sigma);

/// Analytic inverse of f_similarity: y·σ·√m / √(1−y²). Requires y ∈ [0,1).
double estimate_baseline_norm(double mean_centred_sim, std::size_t dim, double sigma);

double rmse_features(std::span<const double> estimated, std::span<const double> truth);

struct NormEstimate {
    double agent_a = 0.0;
    double agent_b = 0.0;
    double pooled = 0.0;  // both agents' samples averaged together
};

/// Per-device baseline norm estimates. Throws DomainError when a device's
/// mean centred similarity leaves [0,1) (e.g. every score quantised to 1).
std::map<DeviceId, NormEstimate> estimate_norms(const AlignedSeriesMap& aligned, std::size_t dim, double sigma);

/// Adds N(0, noise_std²), rounds to the nearest multiple of `step` (0 = off), clamps to [0,1].
Series obfuscate_scores(std::span<const double> series, double noise_std, double step, Rng& rng);

}  // namespace trustrecon
