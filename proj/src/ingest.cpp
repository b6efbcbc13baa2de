#include "trustrecon/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "trustrecon/errors.hpp"

namespace trustrecon {

namespace {

struct Line {
    std::size_t number;  // 1-based
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back({number++, text.substr(start, end - start)});
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <typename Int>
Int parse_integer(std::string_view field, std::size_t row, const char* what) {
    Int value{};
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(ParseErrorKind::non_numeric, row, std::string(what) + " '" + std::string(field) + "'");
    }
    return value;
}

double parse_real(std::string_view field, std::size_t row, const char* what) {
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ParseError(ParseErrorKind::non_numeric, row, std::string(what) + " '" + std::string(field) + "'");
    }
    return value;
}

std::string join_ids(const std::vector<DeviceId>& ids) {
    std::string out;
    for (auto id : ids) {
        if (!out.empty()) out += ' ';
        out += std::to_string(id);
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return {buffer.data(), ptr};
}

SeriesMap parse_trust_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines.front().text != kTrustHeader) {
        throw ParseError(ParseErrorKind::header, 1, "expected '" + std::string(kTrustHeader) + "'");
    }

    struct Cell {
        double score;
        std::size_t row;
    };
    std::map<DeviceId, std::map<std::size_t, Cell>> grouped;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto fields = split_fields(line.text);
        if (fields.size() != 3) {
            throw ParseError(ParseErrorKind::field_count, line.number,
                             "expected 3 fields, got " + std::to_string(fields.size()));
        }
        const auto step = parse_integer<std::size_t>(fields[0], line.number, "time_step");
        const auto device = parse_integer<DeviceId>(fields[1], line.number, "device_id");
        const auto score = parse_real(fields[2], line.number, "trust_score");
        if (score < 0.0 || score > 1.0) {
            throw ParseError(ParseErrorKind::out_of_range, line.number,
                             "trust_score " + std::string(fields[2]) + " outside [0,1]");
        }
        auto [it, inserted] = grouped[device].emplace(step, Cell{score, line.number});
        if (!inserted) {
            throw ParseError(ParseErrorKind::duplicate_step, line.number,
                             "device " + std::to_string(device) + " repeats time step " + std::to_string(step) +
                                 " (first at row " + std::to_string(it->second.row) + ")");
        }
    }

    SeriesMap out;
    for (const auto& [device, cells] : grouped) {
        Series series;
        series.reserve(cells.size());
        std::size_t expected = 0;
        for (const auto& [step, cell] : cells) {
            if (step != expected) {
                throw ParseError(ParseErrorKind::missing_step, cell.row,
                                 "device " + std::to_string(device) + " has no time step " + std::to_string(expected));
            }
            series.push_back(cell.score);
            ++expected;
        }
        out.emplace(device, std::move(series));
    }
    return out;
}

std::string export_trust_csv(const TrustLog& log) {
    std::string out(kTrustHeader);
    out += '\n';
    for (std::size_t t = 0; t < log.time_steps(); ++t) {
        for (const auto& [device, series] : log.all_series()) {
            out += std::to_string(t);
            out += ',';
            out += std::to_string(device);
            out += ',';
            out += format_double(series[t]);
            out += '\n';
        }
    }
    return out;
}

TrustLog trust_log_from_series(std::string agent_id, const SeriesMap& series) {
    const std::size_t steps = series.empty() ? 0 : series.begin()->second.size();
    TrustLog log(std::move(agent_id), steps);
    for (const auto& [device, s] : series) log.set_series(device, s);
    return log;
}

AlignmentResult align_agents(const SeriesMap& a, const SeriesMap& b) {
    if (a.empty() || b.empty()) throw AlignmentError("cannot align an empty agent log");
    AlignmentResult result;
    for (const auto& [device, series_a] : a) {
        auto it = b.find(device);
        if (it == b.end()) {
            result.only_in_a.push_back(device);
            continue;
        }
        if (series_a.size() != it->second.size()) {
            throw AlignmentError("device " + std::to_string(device) + ": agent A has " +
                                 std::to_string(series_a.size()) + " steps, agent B has " +
                                 std::to_string(it->second.size()));
        }
        result.aligned.emplace(device, AlignedSeries{series_a, it->second});
    }
    for (const auto& [device, _] : b) {
        if (a.count(device) == 0) result.only_in_b.push_back(device);
    }
    if (result.aligned.empty()) {
        throw AlignmentError("agents share no devices (A: " + join_ids(result.only_in_a) +
                             "; B: " + join_ids(result.only_in_b) + ")");
    }
    return result;
}

std::string embeddings_header(std::size_t horizon) {
    std::string out = "device_id";
    for (char agent : {'a', 'b'}) {
        for (std::size_t t = 0; t < horizon; ++t) {
            out += ',';
            out += agent;
            out += "_t";
            out += std::to_string(t);
        }
    }
    out += ",mean_a,std_a,mean_b,std_b";
    return out;
}

std::string export_embeddings_csv(const EmbeddingMap& embeddings) {
    if (embeddings.empty()) throw DataError("no embeddings to export");
    const auto dim = embeddings.begin()->second.dimension();
    std::string out = embeddings_header(embeddings.begin()->second.horizon());
    out += '\n';
    for (const auto& [device, e] : embeddings) {
        if (e.dimension() != dim) {
            throw DataError("device " + std::to_string(device) + ": embedding dimension " +
                            std::to_string(e.dimension()) + " differs from " + std::to_string(dim));
        }
        out += std::to_string(device);
        for (double x : e.features()) {
            out += ',';
            out += format_double(x);
        }
        out += '\n';
    }
    return out;
}

EmbeddingMap parse_embeddings_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(ParseErrorKind::header, 1, "empty input");
    const auto columns = split_fields(lines.front().text).size();
    if (columns < 1 + embedding_dimension(2) || (columns - 1 - ReconstructedEmbedding::kStatCount) % 2 != 0 ||
        lines.front().text != embeddings_header((columns - 1 - ReconstructedEmbedding::kStatCount) / 2)) {
        throw ParseError(ParseErrorKind::header, 1, "not an embeddings header");
    }

    EmbeddingMap out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto fields = split_fields(line.text);
        if (fields.size() != columns) {
            throw ParseError(ParseErrorKind::field_count, line.number,
                             "expected " + std::to_string(columns) + " fields, got " + std::to_string(fields.size()));
        }
        const auto device = parse_integer<DeviceId>(fields[0], line.number, "device_id");
        std::vector<double> features;
        features.reserve(columns - 1);
        for (std::size_t c = 1; c < columns; ++c) features.push_back(parse_real(fields[c], line.number, "feature"));
        if (!out.emplace(device, ReconstructedEmbedding(device, std::move(features))).second) {
            throw ParseError(ParseErrorKind::duplicate_step, line.number, "device " + std::to_string(device) + " repeated");
        }
    }
    return out;
}

std::string export_matrix_csv(const DistanceMatrix& matrix) {
    if (!matrix.is_symmetric()) throw DataError("distance matrix is not symmetric");
    std::string out = "device_id";
    for (auto id : matrix.ids()) {
        out += ',';
        out += std::to_string(id);
    }
    out += '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out += std::to_string(matrix.ids()[i]);
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            out += ',';
            out += format_double(matrix.at(i, j));
        }
        out += '\n';
    }
    return out;
}

DistanceMatrix parse_matrix_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(ParseErrorKind::header, 1, "empty input");
    const auto header = split_fields(lines.front().text);
    if (header.front() != "device_id") throw ParseError(ParseErrorKind::header, 1, "first cell must be 'device_id'");

    std::vector<DeviceId> ids;
    for (std::size_t c = 1; c < header.size(); ++c) ids.push_back(parse_integer<DeviceId>(header[c], 1, "device_id"));
    const auto n = ids.size();
    if (lines.size() != n + 1) {
        throw ParseError(ParseErrorKind::field_count, lines.size(),
                         "expected " + std::to_string(n) + " matrix rows, got " + std::to_string(lines.size() - 1));
    }

    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& line = lines[i + 1];
        const auto fields = split_fields(line.text);
        if (fields.size() != n + 1) {
            throw ParseError(ParseErrorKind::field_count, line.number,
                             "expected " + std::to_string(n + 1) + " fields, got " + std::to_string(fields.size()));
        }
        if (parse_integer<DeviceId>(fields[0], line.number, "device_id") != ids[i]) {
            throw ParseError(ParseErrorKind::header, line.number, "row id does not match header order");
        }
        for (std::size_t j = 1; j <= n; ++j) values.push_back(parse_real(fields[j], line.number, "distance"));
    }
    DistanceMatrix matrix(std::move(ids), std::move(values));
    if (!matrix.is_symmetric()) throw DataError("distance matrix is not symmetric");
    return matrix;
}

std::string export_selections_csv(const std::vector<SelectionRecord>& selections,
                                  const std::map<DeviceId, double>& trust) {
    std::string out = "task_id,device_id,rank,trust_score,satisfied\n";
    for (const auto& record : selections) {
        for (std::size_t rank = 0; rank < record.selected.size(); ++rank) {
            const auto device = record.selected[rank];
            out += std::to_string(record.task_id) + ',' + std::to_string(device) + ',' + std::to_string(rank + 1) +
                   ',' + format_double(trust.at(device)) + ',' + (record.satisfied ? '1' : '0') + '\n';
        }
    }
    return out;
}

std::string export_overhead_csv(const std::vector<OverheadRow>& rows) {
    std::string out = "stage,eval_overhead,accuracy\n";
    for (const auto& row : rows) {
        out += std::to_string(row.stage) + ',' + std::to_string(row.overhead) + ',' + format_double(row.accuracy) + '\n';
    }
    return out;
}

std::string export_agent_comparison_csv(const AgentComparison& comparison) {
    std::string out = "device_id,mean_a,mean_b,std_a,std_b\n";
    for (const auto& p : comparison.points) {
        out += std::to_string(p.device_id) + ',' + format_double(p.mean_a) + ',' + format_double(p.mean_b) + ',' +
               format_double(p.std_a) + ',' + format_double(p.std_b) + '\n';
    }
    return out;
}

std::string export_replicates_csv(const ReplicateReport& report) {
    std::string out = "replicate,seed,mean_offdiag\n";
    for (const auto& e : report.entries) {
        out += std::to_string(e.replicate) + ',' + std::to_string(e.seed) + ',' + format_double(e.mean_offdiag) + '\n';
    }
    return out;
}

std::string export_graphs_csv(const std::vector<NamedGraph>& graphs) {
    std::string out = "graph,side_a,index_a,side_b,index_b\n";
    for (const auto& [name, graph] : graphs) {
        for (const auto& e : graph.edges()) {
            out += name + ",A," + std::to_string(e.a) + ",B," + std::to_string(e.b) + '\n';
        }
    }
    return out;
}

std::string export_spectrum_csv(const std::vector<NamedSpectrum>& spectra) {
    std::string out = "graph,eig_index,eigenvalue\n";
    for (const auto& [name, eigenvalues] : spectra) {
        for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
            out += name + ',' + std::to_string(i) + ',' + format_double(eigenvalues[i]) + '\n';
        }
    }
    return out;
}

}  // namespace trustrecon
