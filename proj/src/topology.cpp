#include "swsync/topology.h"

#include <algorithm>
#include <string>

#include "swsync/errors.h"

namespace swsync {

std::uint32_t ring_distance(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= n || j >= n) {
        throw ConfigError("ring_distance: index out of range");
    }
    if (i == j) {
        throw ConfigError("ring_distance: source and destination coincide");
    }
    const std::size_t diff = i > j ? i - j : j - i;
    return static_cast<std::uint32_t>(std::min(diff, n - diff));
}

NetworkTopology::NetworkTopology(std::size_t n, std::size_t k, double p, std::vector<Edge> edges)
    : n_(n), k_(k), p_(p), edges_(std::move(edges)) {
    if (edges_.size() != n * k) {
        throw ConfigError("expected N*k = " + std::to_string(n * k) + " edges, got " +
                          std::to_string(edges_.size()));
    }
    for (const Edge& e : edges_) {
        if (e.source >= n || e.destination >= n) {
            throw ConfigError("edge endpoint out of range");
        }
        if (e.source == e.destination) {
            throw ConfigError("self-loop on unit " + std::to_string(e.source));
        }
        if (e.ring_distance != ring_distance(e.source, e.destination, n)) {
            throw ConfigError("inconsistent ring distance on edge " + std::to_string(e.source) +
                              "->" + std::to_string(e.destination));
        }
    }
    std::stable_sort(edges_.begin(), edges_.end(),
                     [](const Edge& a, const Edge& b) { return a.source < b.source; });
    index();

    std::vector<UnitIndex> dests;
    for (std::size_t s = 0; s < n_; ++s) {
        dests.clear();
        for (const Edge& e : out_edges(s)) dests.push_back(e.destination);
        std::sort(dests.begin(), dests.end());
        if (std::adjacent_find(dests.begin(), dests.end()) != dests.end()) {
            throw ConfigError("duplicate edge from unit " + std::to_string(s));
        }
    }
}

void NetworkTopology::index() {
    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) ++offsets_[e.source + 1];
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
}

std::vector<std::vector<UnitIndex>> NetworkTopology::undirected_adjacency() const {
    std::vector<std::vector<UnitIndex>> adj(n_);
    for (const Edge& e : edges_) {
        adj[e.source].push_back(e.destination);
        adj[e.destination].push_back(e.source);
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

namespace {

void check_lattice_shape(std::size_t n, std::size_t k) {
    if (k == 0 || k % 2 != 0) {
        throw ConfigError("lattice degree k must be even and positive, got " + std::to_string(k));
    }
    if (k >= n) {
        throw ConfigError("lattice degree k must be below N (k=" + std::to_string(k) +
                          ", N=" + std::to_string(n) + ")");
    }
}

template <class WeightFn>
std::vector<Edge> lattice_edges(std::size_t n, std::size_t k, WeightFn&& weight_of) {
    std::vector<Edge> edges;
    edges.reserve(n * k);
    const std::size_t half = k / 2;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t d = 1; d <= half; ++d) {
            const auto dst = static_cast<UnitIndex>((s + d) % n);
            edges.push_back({static_cast<UnitIndex>(s), dst, weight_of(s), ring_distance(s, dst, n)});
        }
        for (std::size_t d = 1; d <= half; ++d) {
            const auto dst = static_cast<UnitIndex>((s + n - d) % n);
            edges.push_back({static_cast<UnitIndex>(s), dst, weight_of(s), ring_distance(s, dst, n)});
        }
    }
    return edges;
}

} // namespace

NetworkTopology make_ring_lattice(std::size_t n, std::size_t k, const Population& pop,
                                  const WeightScales& scales, Rng& rng) {
    check_lattice_shape(n, k);
    if (pop.size() != n) {
        throw ConfigError("population size does not match N");
    }
    auto edges = lattice_edges(n, k, [&](std::size_t s) {
        return pop.is_inhibitory(s) ? -scales.inhibitory * rng.uniform()
                                    : scales.excitatory * rng.uniform();
    });
    return NetworkTopology(n, k, 0.0, std::move(edges));
}

NetworkTopology make_ring_lattice(std::size_t n, std::size_t k, double weight) {
    check_lattice_shape(n, k);
    return NetworkTopology(n, k, 0.0, lattice_edges(n, k, [&](std::size_t) { return weight; }));
}

NetworkTopology rewire(const NetworkTopology& topo, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("rewiring probability must lie in [0, 1]");
    }
    NetworkTopology out = topo;
    out.p_ = p;
    const std::size_t n = out.n_;
    std::vector<UnitIndex> current;
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t begin = out.offsets_[s];
        const std::size_t end = out.offsets_[s + 1];
        current.clear();
        for (std::size_t e = begin; e < end; ++e) current.push_back(out.edges_[e].destination);
        const bool saturated = current.size() + 1 >= n;

        for (std::size_t e = begin; e < end; ++e) {
            if (!(rng.uniform() < p) || saturated) continue;
            UnitIndex candidate;
            do {
                candidate = static_cast<UnitIndex>(rng.below(n));
            } while (candidate == s ||
                     std::find(current.begin(), current.end(), candidate) != current.end());
            current[e - begin] = candidate;
            Edge& edge = out.edges_[e];
            edge.destination = candidate;
            edge.ring_distance = ring_distance(s, candidate, n);
        }
    }
    return out;
}

double clustering_coefficient(const NetworkTopology& topo) {
    const auto adj = topo.undirected_adjacency();
    const std::size_t n = adj.size();
    if (n == 0) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& nb = adj[i];
        const std::size_t deg = nb.size();
        if (deg < 2) continue;
        std::size_t links = 0;
        for (std::size_t a = 0; a < deg; ++a) {
            const auto& other = adj[nb[a]];
            for (std::size_t b = a + 1; b < deg; ++b) {
                if (std::binary_search(other.begin(), other.end(), nb[b])) ++links;
            }
        }
        total += static_cast<double>(links) / (static_cast<double>(deg * (deg - 1)) / 2.0);
    }
    return total / static_cast<double>(n);
}

PathLength characteristic_path_length(const NetworkTopology& topo) {
    const auto adj = topo.undirected_adjacency();
    const std::size_t n = adj.size();
    PathLength result;
    if (n < 2) return result;

    std::vector<std::uint32_t> dist(n);
    std::vector<UnitIndex> queue(n);
    std::uint64_t sum = 0;
    std::uint64_t pairs = 0;
    constexpr std::uint32_t unseen = UINT32_MAX;
    for (std::size_t src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[src] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = static_cast<UnitIndex>(src);
        while (head < tail) {
            const UnitIndex u = queue[head++];
            for (UnitIndex w : adj[u]) {
                if (dist[w] == unseen) {
                    dist[w] = dist[u] + 1;
                    sum += dist[w];
                    queue[tail++] = w;
                }
            }
        }
        pairs += tail - 1;
        if (tail != n) result.connected = false;
    }
    result.mean = pairs ? static_cast<double>(sum) / static_cast<double>(pairs) : 0.0;
    return result;
}

GraphMetrics graph_metrics(const NetworkTopology& topo) {
    return {clustering_coefficient(topo), characteristic_path_length(topo)};
}

} // namespace swsync
