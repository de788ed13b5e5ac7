#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swsync/neuron.h"
#include "swsync/rng.h"

namespace swsync {

using UnitIndex = std::uint32_t;

struct Edge {
    UnitIndex source = 0;
    UnitIndex destination = 0;
    double weight = 0;
    std::uint32_t ring_distance = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Shortest hop count around a ring of n units. Throws ConfigError when i == j
// or either index is out of range.
std::uint32_t ring_distance(std::size_t i, std::size_t j, std::size_t n);

// Directed weighted graph on a ring of n units. Edges are kept grouped by
// source so the out-edges of a unit form one contiguous span.
class NetworkTopology {
public:
    NetworkTopology() = default;

    // Validates and takes ownership of an edge list: no self-loops, no
    // duplicate (source, destination) pairs, ring distances consistent, and
    // exactly n*k edges. Throws ConfigError on violation.
    NetworkTopology(std::size_t n, std::size_t k, double p, std::vector<Edge> edges);

    std::size_t size() const noexcept { return n_; }
    std::size_t degree() const noexcept { return k_; }
    double rewiring_probability() const noexcept { return p_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Edge> out_edges(std::size_t source) const noexcept {
        return {edges_.data() + offsets_[source], edges_.data() + offsets_[source + 1]};
    }

    // Undirected projection as sorted adjacency lists.
    std::vector<std::vector<UnitIndex>> undirected_adjacency() const;

    friend bool operator==(const NetworkTopology& a, const NetworkTopology& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
    }

private:
    friend NetworkTopology rewire(const NetworkTopology&, double, Rng&);

    void index();

    std::size_t n_ = 0;
    std::size_t k_ = 0;
    double p_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
};

struct WeightScales {
    double excitatory = 32.0;
    double inhibitory = 22.0;
};

// Each unit gets directed edges to its k/2 nearest neighbours in each
// direction. Weights are w_e*U[0,1) from excitatory sources and -w_i*U[0,1)
// from inhibitory ones. Throws ConfigError for odd k or k >= n.
NetworkTopology make_ring_lattice(std::size_t n, std::size_t k, const Population& pop,
                                  const WeightScales& scales, Rng& rng);

// Same lattice with every weight set to `weight`; for tests and tooling that
// do not need a population.
NetworkTopology make_ring_lattice(std::size_t n, std::size_t k, double weight = 1.0);

// Visits every directed edge in order and, with probability p, moves its
// destination to a unit drawn uniformly among those that are neither the
// source nor already a destination of that source. Source and weight are
// kept. A source already connected to every other unit is left alone.
NetworkTopology rewire(const NetworkTopology& topo, double p, Rng& rng);

// Mean local clustering on the undirected projection; units with fewer than
// two neighbours contribute 0.
double clustering_coefficient(const NetworkTopology& topo);

struct PathLength {
    double mean = 0;         // over reachable ordered pairs
    bool connected = true;   // false: some pair is unreachable and `mean` is not L
};

// Mean shortest hop count over all ordered pairs of the undirected projection,
// by breadth-first search from every unit.
PathLength characteristic_path_length(const NetworkTopology& topo);

struct GraphMetrics {
    double clustering = 0;
    PathLength path_length;
};

GraphMetrics graph_metrics(const NetworkTopology& topo);

// Edge-list text format:
//   N k p seed
//   source destination weight ring_distance
//   ...
// Floating values use shortest round-trip formatting, so write/read is exact.
void write_network(std::ostream& out, const NetworkTopology& topo, std::uint64_t seed);
void write_network(const std::string& path, const NetworkTopology& topo, std::uint64_t seed);

struct NetworkFile {
    NetworkTopology topology;
    std::uint64_t seed = 0;
};

NetworkFile read_network(std::istream& in, const std::string& name = "<stream>");
NetworkFile read_network(const std::string& path);

} // namespace swsync
