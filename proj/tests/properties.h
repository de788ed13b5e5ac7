#pragma once

// Randomized structural invariants shared by the unit and acceptance suites.
// Each check runs `cases` generated inputs and reports the first failure.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>

#include "swsync/rng.h"
#include "swsync/simulate.h"
#include "swsync/topology.h"

namespace props {

struct Outcome {
    bool ok = true;
    std::size_t cases = 0;
    std::string failure;

    void fail(std::string why) {
        if (ok) failure = std::move(why);
        ok = false;
    }
};

struct SmallNetwork {
    std::size_t n;
    std::size_t k;
    double p;
    std::uint64_t seed;
};

inline SmallNetwork random_shape(swsync::Rng& gen) {
    SmallNetwork s;
    s.n = 3 + gen.below(60);
    const std::size_t max_half = (s.n - 1) / 2;
    s.k = 2 * (1 + gen.below(std::min<std::size_t>(max_half, 6)));
    s.p = gen.below(4) == 0 ? static_cast<double>(gen.below(2)) : gen.uniform();
    s.seed = gen.below(UINT32_MAX);
    return s;
}

inline std::string describe(const SmallNetwork& s) {
    return "N=" + std::to_string(s.n) + " k=" + std::to_string(s.k) + " p=" + std::to_string(s.p) +
           " seed=" + std::to_string(s.seed);
}

// Edge count N*k, no self-loops, no duplicates, ring distances consistent,
// sources and weights preserved.
inline Outcome rewire_structure(std::size_t cases, std::uint64_t seed) {
    Outcome out;
    swsync::Rng gen(seed);
    for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
        const SmallNetwork s = random_shape(gen);
        const auto lattice = swsync::make_ring_lattice(s.n, s.k, 1.0);
        swsync::Rng rng(s.seed);
        const auto wired = swsync::rewire(lattice, s.p, rng);
        const auto& edges = wired.edges();
        if (edges.size() != s.n * s.k) out.fail("edge count changed: " + describe(s));
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            if (e.source == e.destination) out.fail("self-loop: " + describe(s));
            if (!seen.insert({e.source, e.destination}).second) out.fail("duplicate: " + describe(s));
            const std::size_t diff = e.source > e.destination ? e.source - e.destination
                                                              : e.destination - e.source;
            if (e.ring_distance != std::min(diff, s.n - diff) || e.ring_distance > s.n / 2)
                out.fail("ring distance: " + describe(s));
            if (e.source != lattice.edges()[i].source || e.weight != lattice.edges()[i].weight)
                out.fail("source or weight moved: " + describe(s));
        }
    }
    return out;
}

inline Outcome rewire_zero_is_identity(std::size_t cases, std::uint64_t seed) {
    Outcome out;
    swsync::Rng gen(seed);
    for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
        SmallNetwork s = random_shape(gen);
        swsync::Rng pop_rng(s.seed, swsync::Stream::Population);
        const auto pop = swsync::make_population(s.n, s.n - s.n / 5, s.n / 5, pop_rng);
        swsync::Rng topo_rng(s.seed, swsync::Stream::Topology);
        const auto lattice = swsync::make_ring_lattice(s.n, s.k, pop, {}, topo_rng);
        const auto same = swsync::rewire(lattice, 0.0, topo_rng);
        if (!(same == lattice)) out.fail("p=0 changed edges: " + describe(s));
    }
    return out;
}

inline Outcome ring_distance_symmetry(std::size_t cases, std::uint64_t seed) {
    Outcome out;
    swsync::Rng gen(seed);
    for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
        const std::size_t n = 2 + gen.below(5000);
        const std::size_t i = gen.below(n);
        std::size_t j = gen.below(n - 1);
        if (j >= i) ++j;
        const auto dij = swsync::ring_distance(i, j, n);
        const auto dji = swsync::ring_distance(j, i, n);
        if (dij != dji) out.fail("asymmetric at N=" + std::to_string(n));
        if (dij < 1 || dij > n / 2) out.fail("out of [1, N/2] at N=" + std::to_string(n));
    }
    return out;
}

// With delays enabled but every delay collapsed to 0 (scale >= N/2), rasters
// equal the delay-free run bit for bit.
inline Outcome zero_delay_equivalence(std::size_t cases, std::uint64_t seed) {
    Outcome out;
    swsync::Rng gen(seed);
    for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
        const SmallNetwork s = random_shape(gen);
        swsync::NetworkSpec spec{s.n, s.n - s.n / 5, s.n / 5, s.k, s.p};
        const auto net = swsync::build_network(spec, {}, s.seed);
        swsync::SimConfig cfg;
        cfg.duration = 40 + gen.below(120);
        cfg.seed = s.seed;
        const auto plain = swsync::run_simulation(net.topology, net.population, cfg);
        cfg.delay_enabled = true;
        cfg.distance_scale = static_cast<std::uint32_t>(s.n / 2 + gen.below(100));
        const auto delayed = swsync::run_simulation(net.topology, net.population, cfg);
        if (!(plain == delayed)) out.fail("rasters differ: " + describe(s));
    }
    return out;
}

// The bucket rule at its anchors: 25 -> 0, 26 -> 1, 500 -> 19, and
// generally constant on each 25-hop bucket.
inline Outcome delay_buckets(std::size_t cases, std::uint64_t seed) {
    Outcome out;
    if (swsync::edge_delay(25, 25) != 0) out.fail("25 hops should be 0 ms");
    if (swsync::edge_delay(26, 25) != 1) out.fail("26 hops should be 1 ms");
    if (swsync::edge_delay(500, 25) != 19) out.fail("500 hops should be 19 ms");
    swsync::Rng gen(seed);
    for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
        const auto d = static_cast<std::uint32_t>(1 + gen.below(500));
        const auto delay = swsync::edge_delay(d, 25);
        if (delay > 19) out.fail("delay above 19 ms");
        if (delay * 25 + 1 > d || d > (delay + 1) * 25) out.fail("hop count outside its bucket");
    }
    return out;
}

} // namespace props
