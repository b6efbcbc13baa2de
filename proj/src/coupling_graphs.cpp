#include "trustrecon/coupling_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "trustrecon/errors.hpp"

namespace trustrecon {

namespace {

constexpr double kOffDiagonalTolerance = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const SymmetricMatrix& m) {
    double accum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i != j) accum += m(i, j) * m(i, j);
        }
    }
    return std::sqrt(accum);
}

}  // namespace

char side_label(Side side) { return side == Side::a ? 'A' : 'B'; }

void CouplingGraph::add_edge(Edge e) {
    vertices_.insert({Side::a, e.a});
    vertices_.insert({Side::b, e.b});
    edges_.insert(e);
}

std::size_t CouplingGraph::degree(Vertex v) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) {
        return v.side == Side::a ? e.a == v.index : e.b == v.index;
    }));
}

CouplingGraph build_time_graph(std::size_t time_steps) {
    if (time_steps < 1) throw InputError("time graph needs at least one time step");
    CouplingGraph g;
    for (std::size_t t = 0; t < time_steps; ++t) g.add_edge({t, t});
    return g;
}

CouplingGraph build_stage_graph(std::size_t stages) {
    if (stages < 1) throw InputError("stage graph needs at least one stage");
    CouplingGraph g;
    for (std::size_t i = 1; i <= stages; ++i) g.add_edge({i, i});
    return g;
}

CouplingGraph build_cross_layer_graph(std::size_t stages) {
    if (stages < 2) throw InputError("cross-layer graph needs at least two stages");
    CouplingGraph g;
    for (std::size_t i = 1; i <= stages; ++i) g.add_edge({i, i % stages + 1});
    return g;
}

CouplingGraph graph_union(const CouplingGraph& lhs, const CouplingGraph& rhs) {
    CouplingGraph out = lhs;
    for (const auto& v : rhs.vertices()) out.add_vertex(v);
    for (const auto& e : rhs.edges()) out.add_edge(e);
    return out;
}

SymmetricMatrix laplacian(const CouplingGraph& graph) {
    if (graph.vertices().empty()) throw InputError("laplacian of an empty graph");
    std::map<Vertex, std::size_t> position;
    for (const auto& v : graph.vertices()) position.emplace(v, position.size());

    SymmetricMatrix lap(position.size());
    for (const auto& e : graph.edges()) {
        const auto i = position.at({Side::a, e.a});
        const auto j = position.at({Side::b, e.b});
        lap(i, i) += 1.0;
        lap(j, j) += 1.0;
        lap(i, j) -= 1.0;
        lap(j, i) -= 1.0;
    }
    return lap;
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& matrix) {
    const auto n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (matrix(i, j) != matrix(j, i)) throw InputError("eigenvalues: matrix is not symmetric");
        }
    }

    SymmetricMatrix a = matrix;
    int sweep = 0;
    while (off_diagonal_norm(a) > kOffDiagonalTolerance) {
        if (++sweep > kMaxSweeps) throw ConvergenceError("Jacobi eigenvalue iteration did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle zeroing a(p,q); t = tan(θ) chosen with |θ| ≤ π/4.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i);
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return eigenvalues;
}

double algebraic_connectivity(const SymmetricMatrix& laplacian) {
    if (laplacian.size() < 2) throw InputError("algebraic connectivity needs at least two vertices");
    return std::max(0.0, symmetric_eigenvalues(laplacian)[1]);
}

}  // namespace trustrecon
