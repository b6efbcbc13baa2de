#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trustrecon/analysis.hpp"
#include "trustrecon/chain_trust.hpp"
#include "trustrecon/sim_core.hpp"

namespace trustrecon::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kIoError = 3,
};

/// File name → content. Ordered, so emission order is reproducible.
using ArtifactSet = std::map<std::string, std::string>;

struct SimulateOptions {
    SimConfig sim;
    StageConfig stages;
    std::size_t tasks = 5;
    double obfuscate_noise = 0.0;
    double obfuscate_step = 0.0;
};

/// trust_scores.csv, trust_scores_agent2.csv, selections.csv, overhead_accuracy.csv.
ArtifactSet simulate_artifacts(const SimulateOptions& options);

struct ReconstructOutput {
    ArtifactSet artifacts;  // embeddings_unified.csv, distance_matrix.csv, agent_comparison.csv
    std::vector<DeviceId> skipped;
};

ReconstructOutput reconstruct_artifacts(std::string_view agent_a_csv, std::string_view agent_b_csv, Metric metric);

/// graphs.csv and spectrum.csv for G, H, L and H∪L.
ArtifactSet graph_artifacts(std::size_t time_steps, std::size_t stages);

struct WrittenFile {
    std::filesystem::path path;
    std::string sha256;
};

/// Writes each artifact via temp file + rename. Throws IoError.
std::vector<WrittenFile> write_artifacts(const std::filesystem::path& dir, const ArtifactSet& artifacts);

std::string sha256_hex(std::string_view content);

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trustrecon::cli
