#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trustrecon/analysis.hpp"
#include "trustrecon/chain_trust.hpp"
#include "trustrecon/coupling_graphs.hpp"
#include "trustrecon/matching.hpp"
#include "trustrecon/recon.hpp"
#include "trustrecon/sim_core.hpp"

namespace trustrecon {

inline constexpr std::string_view kTrustHeader = "time_step,device_id,trust_score";

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

/// Groups `time_step,device_id,trust_score` rows by device, sorted by time.
/// Every failure is a ParseError carrying the offending line number.
SeriesMap parse_trust_csv(std::string_view text);

/// Rows sorted by (time_step, device_id).
std::string export_trust_csv(const TrustLog& log);

/// Wraps parsed series in a TrustLog. All series must share one length.
TrustLog trust_log_from_series(std::string agent_id, const SeriesMap& series);

struct AlignmentResult {
    AlignedSeriesMap aligned;
    std::vector<DeviceId> only_in_a;
    std::vector<DeviceId> only_in_b;

    bool has_skipped() const { return !only_in_a.empty() || !only_in_b.empty(); }
};

/// Keeps devices present in both maps. Throws AlignmentError on a length
/// mismatch (naming the device) or when no device is shared.
AlignmentResult align_agents(const SeriesMap& a, const SeriesMap& b);

std::string embeddings_header(std::size_t horizon);
std::string export_embeddings_csv(const EmbeddingMap& embeddings);
EmbeddingMap parse_embeddings_csv(std::string_view text);

/// First row `device_id,<ids...>`, then one row per device.
std::string export_matrix_csv(const DistanceMatrix& matrix);
DistanceMatrix parse_matrix_csv(std::string_view text);

std::string export_selections_csv(const std::vector<SelectionRecord>& selections,
                                  const std::map<DeviceId, double>& trust);
std::string export_overhead_csv(const std::vector<OverheadRow>& rows);
std::string export_agent_comparison_csv(const AgentComparison& comparison);
std::string export_replicates_csv(const ReplicateReport& report);

using NamedGraph = std::pair<std::string, CouplingGraph>;
using NamedSpectrum = std::pair<std::string, std::vector<double>>;

std::string export_graphs_csv(const std::vector<NamedGraph>& graphs);
std::string export_spectrum_csv(const std::vector<NamedSpectrum>& spectra);

}  // namespace trustrecon
