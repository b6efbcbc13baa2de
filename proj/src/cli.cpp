#include "trustrecon/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <array>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "trustrecon/coupling_graphs.hpp"
#include "trustrecon/errors.hpp"
#include "trustrecon/ingest.hpp"
#include "trustrecon/matching.hpp"
#include "trustrecon/recon.hpp"

namespace trustrecon::cli {

namespace {

constexpr const char* kTrustFileA = "trust_scores.csv";
constexpr const char* kTrustFileB = "trust_scores_agent2.csv";

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

TrustLog obfuscate_log(const TrustLog& log, const SimulateOptions& options) {
    if (options.obfuscate_noise == 0.0 && options.obfuscate_step == 0.0) return log;
    TrustLog out(log.agent_id(), log.time_steps());
    for (const auto& [device, series] : log.all_series()) {
        Rng rng(options.sim.seed, "obfuscate", {fnv1a(log.agent_id()), device});
        out.set_series(device, obfuscate_scores(series, options.obfuscate_noise, options.obfuscate_step, rng));
    }
    return out;
}

nlohmann::json config_json(const SimConfig& cfg) {
    return {{"devices", cfg.device_count}, {"time_steps", cfg.time_steps}, {"dim", cfg.embedding_dim},
            {"sigma", cfg.noise_std},      {"p_trust", cfg.trust_prob},    {"seed", cfg.seed}};
}

void add_sim_flags(CLI::App* cmd, SimConfig& cfg) {
    cmd->add_option("--devices", cfg.device_count, "Number of simulated devices")->capture_default_str();
    cmd->add_option("--time-steps", cfg.time_steps, "Samples per device (T+1)")->capture_default_str();
    cmd->add_option("--dim", cfg.embedding_dim, "Baseline embedding dimension")->capture_default_str();
    cmd->add_option("--sigma", cfg.noise_std, "Observation noise standard deviation")->capture_default_str();
    cmd->add_option("--p-trust", cfg.trust_prob, "Probability a device is trustworthy")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Base random seed")->capture_default_str();
}

void print_manifest(std::ostream& out, const std::string& command, nlohmann::json config,
                    const std::vector<WrittenFile>& files, std::chrono::steady_clock::duration elapsed,
                    nlohmann::json extra = nlohmann::json::object()) {
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config"] = std::move(config);
    manifest["artifacts"] = nlohmann::json::array();
    for (const auto& f : files) manifest["artifacts"].push_back({{"path", f.path.string()}, {"sha256", f.sha256}});
    manifest["wall_time_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    for (auto& [key, value] : extra.items()) manifest[key] = value;
    out << manifest.dump(2) << '\n';
}

}  // namespace

ArtifactSet simulate_artifacts(const SimulateOptions& options) {
    const auto& cfg = options.sim;
    cfg.validate();
    options.stages.validate(cfg.embedding_dim);
    if (options.obfuscate_noise < 0.0 || options.obfuscate_step < 0.0) {
        throw ConfigError("obfuscation parameters must be >= 0");
    }

    const auto population = generate_population(cfg);
    const auto log_a = run_continuous_evaluation(cfg, population, kAgentOne);
    const auto log_b = run_continuous_evaluation(cfg, population, kAgentTwo);

    // Selection and hypergraph use agent 1's latest scores.
    std::map<DeviceId, double> latest;
    std::map<DeviceId, ResourceProfile> resources;
    for (const auto& d : population) {
        latest[d.device_id] = log_a.series(d.device_id).back();
        Rng rng(cfg.seed, "resources", {d.device_id});
        resources[d.device_id] = sample_resources(rng);
    }
    std::vector<SelectionRecord> selections;
    TrustHypergraphState hypergraph;
    if (population.size() >= 2) {
        for (std::size_t task_id = 0; task_id < options.tasks; ++task_id) {
            Rng rng(cfg.seed, "task", {task_id});
            const auto record = select_collaborators(sample_task(task_id, rng), resources, latest);
            hypergraph = update_hypergraph_weights(std::move(hypergraph), latest, selection_pairs(record));
            selections.push_back(record);
        }
    }

    ArtifactSet artifacts;
    artifacts[kTrustFileA] = export_trust_csv(obfuscate_log(log_a, options));
    artifacts[kTrustFileB] = export_trust_csv(obfuscate_log(log_b, options));
    artifacts["selections.csv"] = export_selections_csv(selections, latest);
    artifacts["overhead_accuracy.csv"] =
        export_overhead_csv(overhead_accuracy_table(cfg, options.stages, population, log_a));
    return artifacts;
}

ReconstructOutput reconstruct_artifacts(std::string_view agent_a_csv, std::string_view agent_b_csv, Metric metric) {
    const auto alignment = align_agents(parse_trust_csv(agent_a_csv), parse_trust_csv(agent_b_csv));
    const auto embeddings = reconstruct_all(alignment.aligned);
    if (reconstruction_map(embeddings) != embeddings) {
        throw DataError("reconstruction map is not idempotent on the emitted embeddings");
    }

    ReconstructOutput output;
    output.skipped = alignment.only_in_a;
    output.skipped.insert(output.skipped.end(), alignment.only_in_b.begin(), alignment.only_in_b.end());
    output.artifacts["embeddings_unified.csv"] = export_embeddings_csv(embeddings);
    output.artifacts["agent_comparison.csv"] = export_agent_comparison_csv(agent_mean_comparison(embeddings));
    if (embeddings.size() >= 1) {
        output.artifacts["distance_matrix.csv"] = export_matrix_csv(pairwise_distances(embeddings, metric));
    }
    return output;
}

ArtifactSet graph_artifacts(std::size_t time_steps, std::size_t stages) {
    const auto h = build_stage_graph(stages);
    const auto l = build_cross_layer_graph(stages);
    const std::vector<NamedGraph> graphs = {
        {"G", build_time_graph(time_steps)},
        {"H", h},
        {"L", l},
        {"HuL", graph_union(h, l)},
    };
    std::vector<NamedSpectrum> spectra;
    for (const auto& [name, graph] : graphs) spectra.emplace_back(name, symmetric_eigenvalues(laplacian(graph)));
    return {{"graphs.csv", export_graphs_csv(graphs)}, {"spectrum.csv", export_spectrum_csv(spectra)}};
}

std::string sha256_hex(std::string_view content) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(content.data(), content.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw IoError("sha256 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

std::vector<WrittenFile> write_artifacts(const std::filesystem::path& dir, const ArtifactSet& artifacts) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    std::vector<WrittenFile> written;
    for (const auto& [name, content] : artifacts) {
        const auto target = dir / name;
        auto temp = target;
        temp += ".tmp";
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (!out) throw IoError("cannot write " + temp.string());
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            out.flush();
            if (!out) {
                std::filesystem::remove(temp, ec);
                throw IoError("short write to " + temp.string());
            }
        }
        std::filesystem::rename(temp, target, ec);
        if (ec) {
            std::filesystem::remove(temp, ec);
            throw IoError("cannot rename into " + target.string());
        }
        const auto digest = sha256_hex(content);
        if (sha256_hex(read_file(target)) != digest) throw IoError("checksum mismatch after writing " + target.string());
        written.push_back({target, digest});
    }
    return written;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Siamese trust-score simulator and embedding reconstruction toolkit", "trustrecon"};
    app.require_subcommand(1);

    SimulateOptions sim_opts;
    std::string sim_out = ".";
    auto* simulate = app.add_subcommand("simulate", "Simulate two agents' trust logs, staged trust and collaborator selection");
    add_sim_flags(simulate, sim_opts.sim);
    simulate->add_option("--stages", sim_opts.stages.stage_count, "Pruning stages K")->capture_default_str();
    simulate->add_option("--table-stages", sim_opts.stages.table_stages, "Rows in overhead_accuracy.csv")
        ->capture_default_str();
    simulate->add_option("--alpha", sim_opts.stages.mix_weight, "Weight of the continuous score")->capture_default_str();
    simulate->add_option("--tasks", sim_opts.tasks, "Tasks for collaborator selection")->capture_default_str();
    simulate->add_option("--obfuscate-noise", sim_opts.obfuscate_noise, "Std of noise added to published scores")
        ->capture_default_str();
    simulate->add_option("--obfuscate-step", sim_opts.obfuscate_step, "Quantisation step of published scores")
        ->capture_default_str();
    simulate->add_option("--out", sim_out, "Output directory")->capture_default_str();

    std::string agent_a, agent_b, recon_out = ".", recon_metric = "euclidean";
    auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild direct-sum embeddings from two trust logs");
    reconstruct->add_option("--agent-a", agent_a, "Agent A trust CSV")->required();
    reconstruct->add_option("--agent-b", agent_b, "Agent B trust CSV")->required();
    reconstruct->add_option("--metric", recon_metric, "euclidean or cosine")
        ->check(CLI::IsMember({"euclidean", "cosine"}))
        ->capture_default_str();
    reconstruct->add_option("--out", recon_out, "Output directory")->capture_default_str();

    SimConfig bench_cfg;
    std::size_t replicates = 5;
    std::uint64_t seed_stride = 1;
    bool fresh_population = false;
    std::string bench_out = ".", bench_metric = "euclidean";
    auto* bench = app.add_subcommand("bench", "Replicate benchmark of mean pairwise embedding distance");
    add_sim_flags(bench, bench_cfg);
    bench->add_option("--replicates", replicates, "Number of replicates")->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--seed-stride", seed_stride, "Seed increment between replicates")->capture_default_str();
    bench->add_flag("--fresh-population", fresh_population, "Redraw the device population in every replicate");
    bench->add_option("--metric", bench_metric, "euclidean or cosine")
        ->check(CLI::IsMember({"euclidean", "cosine"}))
        ->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory")->capture_default_str();

    std::size_t graph_steps = 10, graph_stages = 4;
    std::string graph_out = ".";
    auto* graphs = app.add_subcommand("graphs", "Coupling graphs G, H, L, H∪L and their Laplacian spectra");
    graphs->add_option("--time-steps", graph_steps, "Time steps in G")->check(CLI::PositiveNumber)
        ->capture_default_str();
    graphs->add_option("--stages", graph_stages, "Stages in H and L (>= 2)")->check(CLI::Range(2, 1 << 16))
        ->capture_default_str();
    graphs->add_option("--out", graph_out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (simulate->parsed()) {
            const auto files = write_artifacts(sim_out, simulate_artifacts(sim_opts));
            auto config = config_json(sim_opts.sim);
            config["stages"] = sim_opts.stages.stage_count;
            config["table_stages"] = sim_opts.stages.table_stages;
            config["alpha"] = sim_opts.stages.mix_weight;
            config["tasks"] = sim_opts.tasks;
            config["obfuscate_noise"] = sim_opts.obfuscate_noise;
            config["obfuscate_step"] = sim_opts.obfuscate_step;
            print_manifest(out, "simulate", config, files, std::chrono::steady_clock::now() - start);
        } else if (reconstruct->parsed()) {
            const auto metric = parse_metric(recon_metric);
            auto result = reconstruct_artifacts(read_file(agent_a), read_file(agent_b), metric);
            if (!result.skipped.empty()) {
                err << "warning: devices present in only one log were skipped:";
                for (auto id : result.skipped) err << ' ' << id;
                err << '\n';
            }
            const auto files = write_artifacts(recon_out, result.artifacts);
            nlohmann::json config = {{"agent_a", agent_a}, {"agent_b", agent_b}, {"metric", recon_metric}};
            print_manifest(out, "reconstruct", config, files, std::chrono::steady_clock::now() - start,
                           {{"skipped_devices", result.skipped}});
        } else if (bench->parsed()) {
            const auto mode = fresh_population ? ReplicateMode::fresh_population : ReplicateMode::resample_noise;
            const auto report =
                replicate_benchmark(bench_cfg, replicates, seed_stride, parse_metric(bench_metric), mode);
            const auto files = write_artifacts(bench_out, {{"replicates.csv", export_replicates_csv(report)}});
            auto config = config_json(bench_cfg);
            config["replicates"] = replicates;
            config["seed_stride"] = seed_stride;
            config["fresh_population"] = fresh_population;
            config["metric"] = bench_metric;
            err << "mean of mean off-diagonal distance: " << format_double(report.mean())
                << ", relative spread: " << format_double(report.relative_spread()) << '\n';
            print_manifest(out, "bench", config, files, std::chrono::steady_clock::now() - start,
                           {{"mean", report.mean()}, {"relative_spread", report.relative_spread()}});
        } else if (graphs->parsed()) {
            const auto files = write_artifacts(graph_out, graph_artifacts(graph_steps, graph_stages));
            print_manifest(out, "graphs", {{"time_steps", graph_steps}, {"stages", graph_stages}}, files,
                           std::chrono::steady_clock::now() - start);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kSuccess;
}

}  // namespace trustrecon::cli
