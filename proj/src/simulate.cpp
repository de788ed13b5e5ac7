#include "swsync/simulate.h"

#include <algorithm>
#include <string>

#include "swsync/errors.h"

namespace swsync {

void SimConfig::validate() const {
    if (duration == 0) throw ConfigError("duration must be positive");
    if (distance_scale < 1) throw ConfigError("distance scale must be at least 1");
    if (!(divergence_ceiling > 0)) throw ConfigError("divergence ceiling must be positive");
}

void NetworkSpec::validate() const {
    if (excitatory + inhibitory != units) {
        throw ConfigError("Ne + Ni must equal N");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("rewiring probability p must lie in [0, 1]");
    }
    if (degree == 0 || degree % 2 != 0 || degree >= units) {
        throw ConfigError("k must be even, positive and below N");
    }
}

std::uint32_t edge_delay(std::uint32_t ring_distance, std::uint32_t distance_scale) {
    if (ring_distance < 1) throw ConfigError("edge_delay: ring distance must be at least 1");
    if (distance_scale < 1) throw ConfigError("edge_delay: distance scale must be at least 1");
    return (ring_distance - 1) / distance_scale;
}

DelayBuffer::DelayBuffer(std::size_t units, std::uint32_t max_delay)
    : units_(units), max_delay_(max_delay), slots_(units * (std::size_t{max_delay} + 1), 0.0) {}

void DelayBuffer::take(std::uint64_t tick, std::span<double> out) {
    auto slot = slots_.begin() + static_cast<std::ptrdiff_t>(slot_of(tick) * units_);
    std::copy_n(slot, units_, out.begin());
    std::fill_n(slot, units_, 0.0);
}

std::vector<std::uint32_t> spike_counts(const SpikeRaster& raster, std::size_t duration) {
    std::vector<std::uint32_t> counts(duration, 0);
    for (const SpikeEvent& e : raster.events) {
        if (e.tick < duration) ++counts[e.tick];
    }
    return counts;
}

Network build_network(const NetworkSpec& spec, const WeightScales& weights, std::uint64_t seed) {
    spec.validate();
    Rng pop_rng(seed, Stream::Population);
    Population pop = make_population(spec.units, spec.excitatory, spec.inhibitory, pop_rng);
    Rng topo_rng(seed, Stream::Topology);
    NetworkTopology lattice = make_ring_lattice(spec.units, spec.degree, pop, weights, topo_rng);
    return {std::move(pop), rewire(lattice, spec.p, topo_rng)};
}

SpikeRaster run_simulation(const NetworkTopology& topo, const Population& pop,
                           const SimConfig& config, const SynapticObserver& observer) {
    config.validate();
    const std::size_t n = topo.size();
    if (pop.size() != n) {
        throw ConfigError("population size " + std::to_string(pop.size()) +
                          " does not match network size " + std::to_string(n));
    }

    std::uint32_t max_delay = 0;
    std::vector<std::uint32_t> delays(topo.edges().size(), 0);
    if (config.delay_enabled && n >= 2) {
        max_delay = edge_delay(static_cast<std::uint32_t>(n / 2), config.distance_scale);
        for (std::size_t s = 0, e = 0; s < n; ++s) {
            for (const Edge& edge : topo.out_edges(s)) {
                delays[e++] = edge_delay(edge.ring_distance, config.distance_scale);
            }
        }
    }

    DelayBuffer buffer(n, max_delay);
    std::vector<NeuronState> states = pop.states;
    std::vector<double> synaptic(n, 0.0);
    std::vector<UnitIndex> fired;
    std::vector<std::size_t> first_edge(n + 1, 0);
    for (std::size_t s = 0; s < n; ++s) first_edge[s + 1] = first_edge[s] + topo.out_edges(s).size();

    Rng thalamic(config.seed, Stream::Thalamic);
    const bool gaussian = config.thalamic.distribution == ThalamicDistribution::Gaussian;
    SpikeRaster raster{n, config.duration, {}};

    for (std::size_t t = 0; t < config.duration; ++t) {
        fired.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const ResetResult r = detect_and_reset(states[i], pop.params[i]);
            if (r.fired) {
                states[i] = r.state;
                fired.push_back(static_cast<UnitIndex>(i));
                raster.events.push_back({static_cast<std::uint32_t>(t), static_cast<UnitIndex>(i)});
            }
        }

        for (UnitIndex src : fired) {
            std::size_t e = first_edge[src];
            for (const Edge& edge : topo.out_edges(src)) {
                buffer.schedule(t, edge.destination, delays[e++], edge.weight);
            }
        }

        buffer.take(t, synaptic);
        if (observer) observer(t, synaptic);

        for (std::size_t i = 0; i < n; ++i) {
            const double scale = states[i].kind == UnitKind::Inhibitory ? config.thalamic.inhibitory
                                                                        : config.thalamic.excitatory;
            const double draw = gaussian ? thalamic.normal() : thalamic.uniform();
            const double input = scale * draw + synaptic[i];
            states[i] = step_neuron(states[i], pop.params[i], input, config.divergence_ceiling);
        }
    }
    return raster;
}

} // namespace swsync
