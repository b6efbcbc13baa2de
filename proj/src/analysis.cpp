#include "trustrecon/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "trustrecon/errors.hpp"

namespace trustrecon {

namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
    double accum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        accum += d * d;
    }
    return std::sqrt(accum);
}

double cosine_dissimilarity(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw DomainError("cosine dissimilarity undefined for a zero vector");
    const double cosine = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
    return std::max(0.0, 1.0 - cosine);
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<DeviceId> ids, std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
    if (values_.size() != ids_.size() * ids_.size()) throw DataError("distance matrix is not square");
}

bool DistanceMatrix::is_symmetric() const {
    const auto n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (at(i, j) != at(j, i)) return false;
        }
    }
    return true;
}

Metric parse_metric(std::string_view name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "cosine") return Metric::cosine;
    throw InputError("unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) { return metric == Metric::euclidean ? "euclidean" : "cosine"; }

DistanceMatrix pairwise_distances(const EmbeddingMap& embeddings, Metric metric) {
    if (embeddings.empty()) throw InputError("pairwise_distances: no embeddings");
    const auto dim = embeddings.begin()->second.dimension();
    std::vector<DeviceId> ids;
    std::vector<const ReconstructedEmbedding*> rows;
    for (const auto& [device, embedding] : embeddings) {
        if (embedding.dimension() != dim) throw InputError("pairwise_distances: mixed embedding dimensions");
        ids.push_back(device);
        rows.push_back(&embedding);
    }

    const auto n = ids.size();
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = rows[i]->features();
            const auto& b = rows[j]->features();
            double d = 0.0;
            if (metric == Metric::euclidean) {
                d = euclidean(a, b);
            } else {
                try {
                    d = cosine_dissimilarity(a, b);
                } catch (const DomainError&) {
                    throw DomainError("cosine dissimilarity undefined for devices " + std::to_string(ids[i]) + " and " +
                                      std::to_string(ids[j]));
                }
            }
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return {std::move(ids), std::move(values)};
}

double mean_offdiagonal(const DistanceMatrix& matrix) {
    const auto n = matrix.size();
    if (n < 2) throw InputError("mean_offdiagonal needs at least two devices");
    double accum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) accum += matrix.at(i, j);
        }
    }
    return accum / static_cast<double>(n * (n - 1));
}

double AgentComparison::max_abs_mean_gap() const {
    double gap = 0.0;
    for (const auto& p : points) gap = std::max(gap, std::abs(p.mean_a - p.mean_b));
    return gap;
}

AgentComparison agent_mean_comparison(const EmbeddingMap& embeddings) {
    AgentComparison out;
    for (const auto& [device, e] : embeddings) {
        out.points.push_back({device, e.mean_a(), e.mean_b(), e.std_a(), e.std_b()});
    }
    const auto n = static_cast<double>(out.points.size());
    if (out.points.size() < 2) return out;

    double mx = 0.0, my = 0.0;
    for (const auto& p : out.points) {
        mx += p.mean_a;
        my += p.mean_b;
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (const auto& p : out.points) {
        sxy += (p.mean_a - mx) * (p.mean_b - my);
        sxx += (p.mean_a - mx) * (p.mean_a - mx);
        syy += (p.mean_b - my) * (p.mean_b - my);
    }
    if (sxx > 0.0 && syy > 0.0) {
        out.correlation = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    }
    return out;
}

double ReplicateReport::mean() const {
    if (entries.empty()) return 0.0;
    double total = 0.0;
    for (const auto& e : entries) total += e.mean_offdiag;
    return total / static_cast<double>(entries.size());
}

double ReplicateReport::relative_spread() const {
    if (entries.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(entries.begin(), entries.end(),
                                        [](const auto& a, const auto& b) { return a.mean_offdiag < b.mean_offdiag; });
    return (hi->mean_offdiag - lo->mean_offdiag) / mean();
}

double ReplicateReport::ratio() const {
    if (entries.empty()) return 1.0;
    auto [lo, hi] = std::minmax_element(entries.begin(), entries.end(),
                                        [](const auto& a, const auto& b) { return a.mean_offdiag < b.mean_offdiag; });
    return hi->mean_offdiag / lo->mean_offdiag;
}

EmbeddingMap simulate_embeddings(const SimConfig& cfg, const std::vector<DeviceRecord>& population) {
    const auto log_a = run_continuous_evaluation(cfg, population, kAgentOne);
    const auto log_b = run_continuous_evaluation(cfg, population, kAgentTwo);
    AlignedSeriesMap aligned;
    for (const auto& [device, series] : log_a.all_series()) {
        aligned.emplace(device, AlignedSeries{series, log_b.series(device)});
    }
    return reconstruct_all(aligned);
}

ReplicateReport replicate_benchmark(const SimConfig& base_cfg, std::size_t replicates, std::uint64_t seed_stride,
                                    Metric metric, ReplicateMode mode) {
    if (replicates < 1) throw InputError("replicates must be >= 1");
    base_cfg.validate();
    const auto base_population = generate_population(base_cfg);

    std::vector<std::future<ReplicateEntry>> jobs;
    jobs.reserve(replicates);
    for (std::size_t r = 0; r < replicates; ++r) {
        SimConfig cfg = base_cfg;
        cfg.seed = base_cfg.seed + static_cast<std::uint64_t>(r) * seed_stride;
        jobs.push_back(std::async(std::launch::async, [cfg, r, metric, mode, &base_population] {
            const auto population =
                mode == ReplicateMode::fresh_population ? generate_population(cfg) : base_population;
            const auto matrix = pairwise_distances(simulate_embeddings(cfg, population), metric);
            return ReplicateEntry{r + 1, cfg.seed, mean_offdiagonal(matrix)};
        }));
    }

    ReplicateReport report;
    for (auto& job : jobs) report.entries.push_back(job.get());
    return report;
}

}  // namespace trustrecon
