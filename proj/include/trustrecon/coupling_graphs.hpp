#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <vector>

namespace trustrecon {

enum class Side { a, b };

char side_label(Side side);

struct Vertex {
    Side side = Side::a;
    std::size_t index = 0;
    auto operator<=>(const Vertex&) const = default;
};

/// Edge between side-A vertex `a` and side-B vertex `b` (indices).
struct Edge {
    std::size_t a = 0;
    std::size_t b = 0;
    auto operator<=>(const Edge&) const = default;
};

/// Undirected bipartite graph. Vertices are ordered side A ascending, then
/// side B ascending; every edge crosses sides.
class CouplingGraph {
public:
    CouplingGraph() = default;

    void add_vertex(Vertex v) { vertices_.insert(v); }
    /// Adds both endpoints; duplicates are ignored.
    void add_edge(Edge e);

    const std::set<Vertex>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }
    std::vector<Vertex> ordered_vertices() const { return {vertices_.begin(), vertices_.end()}; }
    std::size_t degree(Vertex v) const;

    bool operator==(const CouplingGraph&) const = default;

private:
    std::set<Vertex> vertices_;
    std::set<Edge> edges_;
};

/// A_t -- B_t for t = 0..T.
CouplingGraph build_time_graph(std::size_t time_steps);
/// B_{A,i} -- B_{B,i} for i = 1..m.
CouplingGraph build_stage_graph(std::size_t stages);
/// B_{A,i} -- B_{B,(i mod m)+1} for i = 1..m; m ≥ 2.
CouplingGraph build_cross_layer_graph(std::size_t stages);
CouplingGraph graph_union(const CouplingGraph& lhs, const CouplingGraph& rhs);

/// Dense symmetric matrix, row-major.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// D − A in the graph's vertex order.
SymmetricMatrix laplacian(const CouplingGraph& graph);

/// All eigenvalues ascending, by cyclic Jacobi rotations until the
/// off-diagonal Frobenius norm is ≤ 1e-12 (at most 100 sweeps).
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& matrix);

/// Second-smallest Laplacian eigenvalue (Fiedler value), clamped at 0.
double algebraic_connectivity(const SymmetricMatrix& laplacian);

}  // namespace trustrecon
