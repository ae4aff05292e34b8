#include "icisim/grid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "icisim/errors.hpp"

namespace icisim {
namespace {

std::string edge_name(std::size_t k, const Edge& e) {
    return "edge " + std::to_string(k + 1) + " (" + std::to_string(e.source + 1) + "-" +
           std::to_string(e.sink + 1) + ")";
}

void check_edge_list(std::size_t nodes, const std::vector<Edge>& edges, const char* what) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = edges[k];
        if (e.source >= nodes || e.sink >= nodes) {
            throw InputError(std::string(what) + " " + edge_name(k, e) + ": node index out of range");
        }
        if (e.source == e.sink) {
            throw InputError(std::string(what) + " " + edge_name(k, e) + ": self loop");
        }
        auto key = std::minmax(e.source, e.sink);
        if (!seen.insert(key).second) {
            throw InputError(std::string(what) + " " + edge_name(k, e) + ": duplicate edge");
        }
    }
}

}  // namespace

bool is_connected(std::size_t nodes, const std::vector<Edge>& edges) {
    if (nodes == 0) {
        return false;
    }
    // union-find
    std::vector<std::size_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    std::size_t components = nodes;
    for (const Edge& e : edges) {
        auto a = find(e.source);
        auto b = find(e.sink);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

GridTopology::GridTopology(std::size_t nodes, std::vector<Edge> edges,
                           std::vector<double> reactance, std::vector<double> vmag)
    : nodes_(nodes), edges_(std::move(edges)), reactance_(std::move(reactance)),
      vmag_(std::move(vmag)) {
    if (nodes_ == 0) {
        throw InputError("grid: at least one node is required");
    }
    if (reactance_.size() != edges_.size()) {
        throw InputError("grid: one reactance per line is required");
    }
    if (vmag_.size() != nodes_) {
        throw InputError("grid: one voltage magnitude per node is required");
    }
    check_edge_list(nodes_, edges_, "grid");
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (!(reactance_[k] > 0.0)) {
            throw InputError("grid " + edge_name(k, edges_[k]) + ": reactance must be > 0");
        }
    }
    for (std::size_t i = 0; i < nodes_; ++i) {
        if (!(vmag_[i] > 0.0)) {
            throw InputError("grid node " + std::to_string(i + 1) + ": |V| must be > 0");
        }
    }
    if (!is_connected(nodes_, edges_)) {
        throw InputError("grid: electrical graph not connected");
    }
}

CommGraph::CommGraph(std::size_t nodes, std::vector<Edge> links, std::vector<double> weights)
    : nodes_(nodes), links_(std::move(links)), weights_(std::move(weights)) {
    if (nodes_ == 0) {
        throw InputError("communication graph: at least one node is required");
    }
    if (weights_.empty()) {
        weights_.assign(links_.size(), 1.0);
    }
    if (weights_.size() != links_.size()) {
        throw InputError("communication graph: one weight per link is required");
    }
    check_edge_list(nodes_, links_, "communication");
    for (std::size_t k = 0; k < links_.size(); ++k) {
        if (!(weights_[k] > 0.0)) {
            throw InputError("communication " + edge_name(k, links_[k]) + ": weight must be > 0");
        }
    }
}

Mat incidence_matrix(const GridTopology& topology) {
    const auto& edges = topology.edges();
    Mat b = Mat::Zero(static_cast<Eigen::Index>(topology.node_count()),
                      static_cast<Eigen::Index>(edges.size()));
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto col = static_cast<Eigen::Index>(k);
        b(static_cast<Eigen::Index>(edges[k].source), col) = -1.0;
        b(static_cast<Eigen::Index>(edges[k].sink), col) = 1.0;
    }
    return b;
}

Mat laplacian(const CommGraph& comm) {
    if (!is_connected(comm.node_count(), comm.links())) {
        throw InputError("communication graph not connected");
    }
    const auto n = static_cast<Eigen::Index>(comm.node_count());
    Mat l = Mat::Zero(n, n);
    for (std::size_t k = 0; k < comm.links().size(); ++k) {
        const auto i = static_cast<Eigen::Index>(comm.links()[k].source);
        const auto j = static_cast<Eigen::Index>(comm.links()[k].sink);
        const double w = comm.weights()[k];
        l(i, i) += w;
        l(j, j) += w;
        l(i, j) -= w;
        l(j, i) -= w;
    }
    return l;
}

Vec edge_coupling(const GridTopology& topology) {
    const auto& edges = topology.edges();
    Vec gamma(static_cast<Eigen::Index>(edges.size()));
    for (std::size_t k = 0; k < edges.size(); ++k) {
        gamma(static_cast<Eigen::Index>(k)) =
            topology.vmag()[edges[k].source] * topology.vmag()[edges[k].sink] /
            topology.reactance()[k];
    }
    return gamma;
}

}  // namespace icisim
