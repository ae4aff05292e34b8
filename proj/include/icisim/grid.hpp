#pragma once

#include <cstddef>
#include <vector>

#include "icisim/types.hpp"

namespace icisim {

/// Oriented edge between two zero-based node indices.
struct Edge {
    std::size_t source;
    std::size_t sink;

    bool operator==(const Edge&) const = default;
};

/// Electrical graph. Lines are lossless and inductive; orientation is
/// bookkeeping only. Construction validates every structural invariant
/// (connected, no self loops, no duplicate lines, positive X and |V|).
class GridTopology {
public:
    GridTopology(std::size_t nodes, std::vector<Edge> edges,
                 std::vector<double> reactance, std::vector<double> vmag);

    std::size_t node_count() const noexcept { return nodes_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<double>& reactance() const noexcept { return reactance_; }
    const std::vector<double>& vmag() const noexcept { return vmag_; }

private:
    std::size_t nodes_;
    std::vector<Edge> edges_;
    std::vector<double> reactance_;
    std::vector<double> vmag_;
};

/// Undirected weighted communication graph for the consensus controller.
/// Connectivity is checked when the Laplacian is built.
class CommGraph {
public:
    /// Empty `weights` means unit weight on every link.
    CommGraph(std::size_t nodes, std::vector<Edge> links, std::vector<double> weights = {});

    std::size_t node_count() const noexcept { return nodes_; }
    const std::vector<Edge>& links() const noexcept { return links_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    std::size_t nodes_;
    std::vector<Edge> links_;
    std::vector<double> weights_;
};

/// Node-by-edge incidence matrix: +1 at the sink, -1 at the source.
Mat incidence_matrix(const GridTopology& topology);

/// Weighted graph Laplacian. Throws InputError if the graph is disconnected.
Mat laplacian(const CommGraph& comm);

/// Per-line coupling gamma_k = |V_i||V_j| / X_ij in watts.
Vec edge_coupling(const GridTopology& topology);

/// True if the undirected graph on `nodes` vertices is connected.
bool is_connected(std::size_t nodes, const std::vector<Edge>& edges);

}  // namespace icisim
