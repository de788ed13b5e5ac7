#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "properties.h"
#include "swsync/errors.h"
#include "swsync/simulate.h"

using namespace swsync;

TEST_CASE("edge_delay buckets") {
    CHECK(edge_delay(25, 25) == 0);
    CHECK(edge_delay(26, 25) == 1);
    CHECK(edge_delay(50, 25) == 1);
    CHECK(edge_delay(51, 25) == 2);
    CHECK(edge_delay(500, 25) == 19);
    CHECK(edge_delay(1, 1) == 0);
    CHECK(edge_delay(2, 1) == 1);
    CHECK_THROWS_AS(edge_delay(0, 25), ConfigError);
    CHECK_THROWS_AS(edge_delay(5, 0), ConfigError);

    const auto outcome = props::delay_buckets(1000, 21);
    CHECK_MESSAGE(outcome.ok, outcome.failure);
}

TEST_CASE("spike_counts") {
    SpikeRaster empty{5, 10, {}};
    CHECK(spike_counts(empty, 10) == std::vector<std::uint32_t>(10, 0));

    SpikeRaster r{10, 10, {{0, 1}, {0, 2}, {5, 9}}};
    CHECK(spike_counts(r, 10) == std::vector<std::uint32_t>{2, 0, 0, 0, 0, 1, 0, 0, 0, 0});
}

TEST_CASE("DelayBuffer delivers on the scheduled tick only") {
    for (std::uint32_t delay = 0; delay <= 19; ++delay) {
        DelayBuffer buffer(4, 19);
        std::vector<double> in(4);
        const std::uint64_t fire_tick = 37;
        for (std::uint64_t t = 0; t < 100; ++t) {
            if (t == fire_tick) buffer.schedule(t, 2, delay, 1.5);
            buffer.take(t, in);
            for (std::size_t u = 0; u < 4; ++u) {
                const double expected = (u == 2 && t == fire_tick + delay) ? 1.5 : 0.0;
                REQUIRE(in[u] == expected);
            }
        }
    }
}

TEST_CASE("DelayBuffer totals match over a closed run") {
    Rng gen(8);
    DelayBuffer buffer(6, 5);
    std::vector<double> in(6);
    double scheduled = 0, delivered = 0;
    const std::uint64_t horizon = 300;
    for (std::uint64_t t = 0; t < horizon + 6; ++t) {
        if (t < horizon) {
            const double amount = gen.uniform();
            buffer.schedule(t, static_cast<UnitIndex>(gen.below(6)), static_cast<std::uint32_t>(gen.below(6)), amount);
            scheduled += amount;
        }
        buffer.take(t, in);
        delivered += std::accumulate(in.begin(), in.end(), 0.0);
    }
    CHECK(delivered == doctest::Approx(scheduled).epsilon(1e-12));
    for (std::uint64_t t = horizon + 6; t < horizon + 20; ++t) {
        buffer.take(t, in);
        for (double x : in) REQUIRE(x == 0.0);
    }
}

namespace {

// 100 quiet units, each with a single out-edge 40 hops clockwise.
struct ProbeNetwork {
    NetworkTopology topo;
    Population pop;
};

ProbeNetwork probe_network(double weight) {
    std::vector<Edge> edges;
    for (UnitIndex s = 0; s < 100; ++s) {
        const auto d = static_cast<UnitIndex>((s + 40) % 100);
        edges.push_back({s, d, weight, ring_distance(s, d, 100)});
    }
    Population pop;
    pop.params.assign(100, {0.02, 0.2, -65, 8});
    pop.states.assign(100, {-70, -14, UnitKind::Excitatory});
    pop.states[0].v = 35; // fires on tick 0
    return {NetworkTopology(100, 1, 0, std::move(edges)), std::move(pop)};
}

} // namespace

TEST_CASE("probe spike arrives exactly delay ticks later") {
    auto net = probe_network(1.0);
    SimConfig cfg;
    cfg.duration = 30;
    cfg.thalamic = {0, 0};
    cfg.delay_enabled = true;
    cfg.distance_scale = 10; // 40 hops -> 3 ms

    std::vector<std::pair<std::size_t, double>> deliveries;
    const auto raster = run_simulation(net.topo, net.pop, cfg, [&](std::size_t t, std::span<const double> syn) {
        for (std::size_t u = 0; u < syn.size(); ++u) {
            if (syn[u] != 0.0) {
                CHECK(u == 40);
                deliveries.emplace_back(t, syn[u]);
            }
        }
    });
    REQUIRE(deliveries.size() == 1);
    CHECK(deliveries[0].first == 3);
    CHECK(deliveries[0].second == 1.0);
    REQUIRE(raster.events.size() == 1);
    CHECK(raster.events[0] == SpikeEvent{0, 0});

    cfg.delay_enabled = false;
    deliveries.clear();
    run_simulation(net.topo, net.pop, cfg, [&](std::size_t t, std::span<const double> syn) {
        if (syn[40] != 0.0) deliveries.emplace_back(t, syn[40]);
    });
    REQUIRE(deliveries.size() == 1);
    CHECK(deliveries[0].first == 0);
}

TEST_CASE("no drive, no spikes") {
    NetworkSpec spec{200, 160, 40, 10, 0.1};
    const auto net = build_network(spec, {0, 0}, 3);
    Population rest = net.population;
    for (auto& s : rest.states) {
        s.v = -70;
        s.u = -14;
    }
    for (auto& p : rest.params) p.b = 0.2;
    SimConfig cfg;
    cfg.duration = 1000;
    cfg.weights = {0, 0};
    cfg.thalamic = {0, 0};
    CHECK(run_simulation(net.topology, rest, cfg).events.empty());
}

TEST_CASE("simulation is deterministic per seed") {
    NetworkSpec spec{300, 240, 60, 10, 0.05};
    const auto a = build_network(spec, {}, 17);
    const auto b = build_network(spec, {}, 17);
    CHECK(a.topology == b.topology);
    SimConfig cfg;
    cfg.duration = 400;
    cfg.seed = 17;
    const auto ra = run_simulation(a.topology, a.population, cfg);
    const auto rb = run_simulation(b.topology, b.population, cfg);
    CHECK(ra == rb);
    CHECK_FALSE(ra.events.empty());
    cfg.seed = 18;
    CHECK_FALSE(run_simulation(a.topology, a.population, cfg) == ra);
}

TEST_CASE("raster invariants") {
    NetworkSpec spec{300, 240, 60, 10, 0.2};
    const auto net = build_network(spec, {}, 5);
    SimConfig cfg;
    cfg.duration = 500;
    cfg.seed = 5;
    const auto r = run_simulation(net.topology, net.population, cfg);
    for (std::size_t i = 0; i < r.events.size(); ++i) {
        REQUIRE(r.events[i].unit < 300);
        REQUIRE(r.events[i].tick < 500);
        if (i) {
            REQUIRE((r.events[i - 1].tick < r.events[i].tick ||
                     (r.events[i - 1].tick == r.events[i].tick && r.events[i - 1].unit < r.events[i].unit)));
        }
    }
    const auto counts = spike_counts(r, 500);
    CHECK(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == r.events.size());
}

TEST_CASE("zero-delay equivalence") {
    const auto outcome = props::zero_delay_equivalence(60, 31);
    CHECK_MESSAGE(outcome.ok, outcome.failure);

    // Full-size network, delays collapsed by a scale of N/2.
    const auto net = build_network({}, {}, 2);
    SimConfig cfg;
    cfg.duration = 500;
    cfg.seed = 2;
    const auto plain = run_simulation(net.topology, net.population, cfg);
    cfg.delay_enabled = true;
    cfg.distance_scale = 500;
    CHECK(run_simulation(net.topology, net.population, cfg) == plain);
}

TEST_CASE("delays change dynamics on rewired networks") {
    const auto net = build_network({1000, 800, 200, 10, 1.0}, {}, 4);
    SimConfig cfg;
    cfg.duration = 300;
    cfg.seed = 4;
    const auto plain = run_simulation(net.topology, net.population, cfg);
    cfg.delay_enabled = true;
    CHECK_FALSE(run_simulation(net.topology, net.population, cfg) == plain);
}

TEST_CASE("divergence propagates as a numeric fault") {
    const auto net = build_network({100, 80, 20, 10, 0.0}, {1e12, 0}, 1);
    SimConfig cfg;
    cfg.duration = 200;
    cfg.thalamic = {10, 10};
    CHECK_THROWS_AS(run_simulation(net.topology, net.population, cfg), NumericFault);
}

TEST_CASE("configuration validation") {
    const auto net = build_network({100, 80, 20, 10, 0.0}, {}, 1);
    SimConfig cfg;
    cfg.duration = 0;
    CHECK_THROWS_AS(run_simulation(net.topology, net.population, cfg), ConfigError);
    cfg.duration = 10;
    cfg.distance_scale = 0;
    CHECK_THROWS_AS(run_simulation(net.topology, net.population, cfg), ConfigError);

    Population small = net.population;
    small.states.pop_back();
    small.params.pop_back();
    CHECK_THROWS_AS(run_simulation(net.topology, small, SimConfig{}), ConfigError);

    CHECK_THROWS_AS(build_network({100, 80, 10, 10, 0.0}, {}, 1), ConfigError);
    CHECK_THROWS_AS(build_network({100, 80, 20, 10, 1.5}, {}, 1), ConfigError);
}

TEST_CASE("raster and series files") {
    const RunHeader header{1000, 20, 7, 0.02};
    const SpikeRaster raster{1000, 20, {{0, 5}, {0, 999}, {3, 1}, {19, 0}}};
    std::stringstream buf;
    write_raster(buf, header, raster);
    CHECK(buf.str() == "1000 20 7 0.02\n0 5\n0 999\n3 1\n19 0\n");
    const auto back = read_raster(buf);
    CHECK(back.raster == raster);
    CHECK(back.header.p == 0.02);

    std::stringstream series;
    const std::vector<double> values{0.5, 1e-17, 3};
    write_series(series, header, std::span<const double>(values));
    CHECK(series.str() == "1000 20 7 0.02\n0.5\n1e-17\n3\n");

    std::stringstream bad("10 5 1 0 0\n0 1\n7 2\n");
    CHECK_THROWS_AS(read_raster(bad), ParseError);
    std::stringstream unordered("10 5 1 0 0\n3 1\n2 2\n");
    CHECK_THROWS_AS(read_raster(unordered), ParseError);
    std::stringstream junk("10 5 1 0 0\n3 x\n");
    CHECK_THROWS_AS(read_raster(junk), ParseError);
}
