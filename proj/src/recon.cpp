#include "trustrecon/recon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trustrecon/errors.hpp"

namespace trustrecon {

namespace {

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_std(std::span<const double> xs, double mean) {
    double accum = 0.0;
    for (double x : xs) accum += (x - mean) * (x - mean);
    return std::sqrt(accum / static_cast<double>(xs.size()));
}

// Type-7 quantile on sorted data.
double quantile(const std::vector<double>& sorted, double p) {
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void append_stats(std::vector<double>& features, std::span<const double> a, std::span<const double> b) {
    const double mean_a = mean_of(a);
    const double mean_b = mean_of(b);
    features.push_back(mean_a);
    features.push_back(population_std(a, mean_a));
    features.push_back(mean_b);
    features.push_back(population_std(b, mean_b));
}

}  // namespace

SummaryStats summary_stats(std::span<const double> series) {
    if (series.size() < 2) throw InputError("summary_stats needs at least two samples");
    SummaryStats stats;
    stats.mean = mean_of(series);
    stats.std = population_std(series, stats.mean);

    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    stats.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    stats.iqr = std::max(0.0, quantile(sorted, 0.75) - quantile(sorted, 0.25));
    return stats;
}

ReconstructedEmbedding::ReconstructedEmbedding(DeviceId device_id, std::vector<double> features)
    : device_id_(device_id), features_(std::move(features)) {
    const auto size = features_.size();
    if (size < embedding_dimension(2) || (size - kStatCount) % 2 != 0) {
        throw InputError("device " + std::to_string(device_id) + ": malformed embedding dimension " +
                         std::to_string(size));
    }
}

ReconstructedEmbedding reconstruct_embedding(DeviceId device_id, const AlignedSeries& aligned) {
    if (aligned.a.size() != aligned.b.size()) {
        throw InputError("device " + std::to_string(device_id) + ": series lengths differ");
    }
    if (aligned.a.size() < 2) throw InputError("device " + std::to_string(device_id) + ": series shorter than 2");

    std::vector<double> features;
    features.reserve(embedding_dimension(aligned.a.size()));
    features.insert(features.end(), aligned.a.begin(), aligned.a.end());
    features.insert(features.end(), aligned.b.begin(), aligned.b.end());
    append_stats(features, aligned.a, aligned.b);
    return {device_id, std::move(features)};
}

EmbeddingMap reconstruct_all(const AlignedSeriesMap& aligned) {
    EmbeddingMap out;
    for (const auto& [device, series] : aligned) out.emplace(device, reconstruct_embedding(device, series));
    return out;
}

EmbeddingMap reconstruction_map(const EmbeddingMap& embeddings) {
    EmbeddingMap out;
    for (const auto& [device, embedding] : embeddings) {
        const auto a = embedding.series_a();
        const auto b = embedding.series_b();
        std::vector<double> features;
        features.reserve(embedding.dimension());
        features.insert(features.end(), a.begin(), a.end());
        features.insert(features.end(), b.begin(), b.end());
        append_stats(features, a, b);
        out.emplace(device, ReconstructedEmbedding(device, std::move(features)));
    }
    return out;
}

double f_similarity(double norm, std::size_t dim, double sigma) {
    if (dim < 1) throw DomainError("f_similarity: dimension must be >= 1");
    if (!(norm >= 0.0) || !(sigma >= 0.0)) throw DomainError("f_similarity: negative input");
    const double scale = static_cast<double>(dim) * sigma * sigma;
    if (norm == 0.0 && scale == 0.0) throw DomainError("f_similarity: 0/0 at zero norm and zero noise");
    return norm / std::sqrt(norm * norm + scale);
}

double estimate_baseline_norm(double mean_centred_sim, std::size_t dim, double sigma) {
    const double y = mean_centred_sim;
    if (!(y >= 0.0)) throw DomainError("estimate_baseline_norm: negative mean similarity violates the noise model");
    if (!(y < 1.0)) throw DomainError("estimate_baseline_norm: mean similarity >= 1, norm diverges");
    if (dim < 1 || !(sigma > 0.0)) throw DomainError("estimate_baseline_norm: need dim >= 1 and sigma > 0");
    return y * sigma * std::sqrt(static_cast<double>(dim)) / std::sqrt((1.0 - y) * (1.0 + y));
}

double rmse_features(std::span<const double> estimated, std::span<const double> truth) {
    if (estimated.size() != truth.size()) throw InputError("rmse_features: length mismatch");
    if (estimated.empty()) throw InputError("rmse_features: empty input");
    double accum = 0.0;
    for (std::size_t i = 0; i < estimated.size(); ++i) {
        const double d = estimated[i] - truth[i];
        accum += d * d;
    }
    return std::sqrt(accum / static_cast<double>(estimated.size()));
}

std::map<DeviceId, NormEstimate> estimate_norms(const AlignedSeriesMap& aligned, std::size_t dim, double sigma) {
    std::map<DeviceId, NormEstimate> out;
    for (const auto& [device, series] : aligned) {
        const double mean_a = mean_of(series.a);
        const double mean_b = mean_of(series.b);
        const double pooled_mean = (mean_a * static_cast<double>(series.a.size()) +
                                    mean_b * static_cast<double>(series.b.size())) /
                                   static_cast<double>(series.a.size() + series.b.size());
        NormEstimate est;
        est.agent_a = estimate_baseline_norm(centred_similarity(mean_a), dim, sigma);
        est.agent_b = estimate_baseline_norm(centred_similarity(mean_b), dim, sigma);
        est.pooled = estimate_baseline_norm(centred_similarity(pooled_mean), dim, sigma);
        out.emplace(device, est);
    }
    return out;
}

Series obfuscate_scores(std::span<const double> series, double noise_std, double step, Rng& rng) {
    if (!(noise_std >= 0.0) || !(step >= 0.0)) throw DomainError("obfuscate_scores: negative parameter");
    Series out(series.begin(), series.end());
    for (auto& s : out) {
        if (noise_std > 0.0) s += rng.normal(0.0, noise_std);
        if (step > 0.0) s = std::round(s / step) * step;
        s = std::clamp(s, 0.0, 1.0);
    }
    return out;
}

}  // namespace trustrecon
