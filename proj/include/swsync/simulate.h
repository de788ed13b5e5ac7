#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swsync/neuron.h"
#include "swsync/topology.h"

namespace swsync {

// Shape of the per-tick background drive. Gaussian: scale * N(0, 1), the
// zero-mean noise of the classic Izhikevich network. Uniform: scale * U[0, 1).
// With Uniform, inputs never exceed the excitatory rheobase (I > 4) at the
// default scales, so excitatory units stay silent.
enum class ThalamicDistribution { Gaussian, Uniform };

struct ThalamicScales {
    double excitatory = 3.0;
    double inhibitory = 11.0;
    ThalamicDistribution distribution = ThalamicDistribution::Gaussian;
};

struct SimConfig {
    std::size_t duration = 2000; // ticks of 1 ms
    WeightScales weights;
    ThalamicScales thalamic;
    bool delay_enabled = false;
    std::uint32_t distance_scale = 25; // ring hops per ms of delay
    std::uint64_t seed = 0;
    double divergence_ceiling = kDefaultDivergenceCeiling;

    void validate() const; // throws ConfigError
};

// Delivery latency in ms for an edge spanning `ring_distance` hops:
// floor((ring_distance - 1) / distance_scale).
std::uint32_t edge_delay(std::uint32_t ring_distance, std::uint32_t distance_scale);

// Circular schedule of future synaptic input. Slot t % (max_delay + 1) holds
// the input due at tick t for every unit.
class DelayBuffer {
public:
    DelayBuffer(std::size_t units, std::uint32_t max_delay);

    std::uint32_t max_delay() const noexcept { return max_delay_; }

    void schedule(std::uint64_t tick, UnitIndex unit, std::uint32_t delay, double amount) {
        slots_[slot_of(tick + delay) * units_ + unit] += amount;
    }

    // Copies the input due at `tick` into `out` and zeroes that slot.
    void take(std::uint64_t tick, std::span<double> out);

private:
    std::size_t slot_of(std::uint64_t tick) const noexcept {
        return static_cast<std::size_t>(tick % (std::uint64_t{max_delay_} + 1));
    }

    std::size_t units_;
    std::uint32_t max_delay_;
    std::vector<double> slots_;
};

struct SpikeEvent {
    std::uint32_t tick = 0;
    UnitIndex unit = 0;

    friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

struct SpikeRaster {
    std::size_t units = 0;
    std::size_t duration = 0;
    std::vector<SpikeEvent> events; // ordered by tick, then unit

    friend bool operator==(const SpikeRaster&, const SpikeRaster&) = default;
};

// Histogram of events per tick; entries sum to events.size().
std::vector<std::uint32_t> spike_counts(const SpikeRaster& raster, std::size_t duration);

struct NetworkSpec {
    std::size_t units = 1000;
    std::size_t excitatory = 800;
    std::size_t inhibitory = 200;
    std::size_t degree = 10;
    double p = 0.0;

    void validate() const; // throws ConfigError
};

struct Network {
    Population population;
    NetworkTopology topology;
};

// Population from the population stream of `seed`; lattice weights and
// rewiring from its topology stream.
Network build_network(const NetworkSpec& spec, const WeightScales& weights, std::uint64_t seed);

// Called once per tick with the synaptic input delivered at that tick, before
// thalamic drive is added.
using SynapticObserver = std::function<void(std::size_t tick, std::span<const double> synaptic)>;

// Per tick: detect and reset fired units, schedule their out-edge weights
// (delay 0 unless delays are enabled), draw thalamic input, then integrate
// every unit on thalamic + delivered synaptic input. Thalamic noise comes from
// the thalamic stream of config.seed.
SpikeRaster run_simulation(const NetworkTopology& topo, const Population& pop,
                           const SimConfig& config, const SynapticObserver& observer = {});

// Header shared by raster and series files. Delay settings are not recorded:
// a run whose delays all collapse to zero writes the same file as a run
// without delays.
struct RunHeader {
    std::size_t units = 0;
    std::size_t duration = 0;
    std::uint64_t seed = 0;
    double p = 0;
};

void write_raster(std::ostream& out, const RunHeader& header, const SpikeRaster& raster);
void write_raster(const std::string& path, const RunHeader& header, const SpikeRaster& raster);

struct RasterFile {
    RunHeader header;
    SpikeRaster raster;
};

RasterFile read_raster(std::istream& in, const std::string& name = "<stream>");
RasterFile read_raster(const std::string& path);

// One value per line under the run header.
void write_series(std::ostream& out, const RunHeader& header, std::span<const double> values);
void write_series(std::ostream& out, const RunHeader& header,
                  std::span<const std::uint32_t> values);
void write_series(const std::string& path, const RunHeader& header, std::span<const double> values);
void write_series(const std::string& path, const RunHeader& header,
                  std::span<const std::uint32_t> values);

} // namespace swsync
