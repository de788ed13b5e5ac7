#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swsync/analysis.h"
#include "swsync/simulate.h"
#include "swsync/topology.h"

namespace swsync {

// p = 0 followed by 17 points spaced a quarter decade apart over [1e-4, 1].
std::vector<double> default_p_grid();

struct SweepConfig {
    std::vector<double> p_grid = default_p_grid();
    std::size_t sims_per_p = 10;
    std::uint64_t base_seed = 1;
    NetworkSpec network; // network.p is ignored; the grid supplies p
    SimConfig sim;       // sim.seed is ignored; each cell gets a derived seed
    std::size_t workers = 1;

    void validate() const; // throws ConfigError
};

// Injective in (p_index, sim_index) for a fixed base seed, and stable across
// runs and platforms. Indices must fit in 32 bits.
std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t p_index, std::size_t sim_index);

// Everything measured for one (p, seed) cell.
struct CellResult {
    std::uint64_t seed = 0;
    double clustering = 0;
    PathLength path_length;
    SyncMeasure sync;
};

// Builds the network for `seed`, measures C and L, simulates and measures S.
CellResult run_cell(const NetworkSpec& network, const SimConfig& sim, double p, std::uint64_t seed);

struct SweepRow {
    double p = 0;
    double C = 0;
    double L = 0; // over connected networks only
    double S = 0;
    double C_norm = 0;
    double L_norm = 0;
    double S_norm = 0;
    double freq_hz = 0; // mean over runs with a defined dominant frequency; NaN if none
    std::size_t n_sims = 0;
    double C_std = 0;
    double L_std = 0;
    double S_std = 0;
    std::size_t disconnected = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;          // one per grid point, grid order
    std::vector<std::vector<CellResult>> cells; // [p_index][sim_index]
    double C0 = 0;                       // ring-lattice baselines used for C_norm, L_norm
    double L0 = 0;
    bool degenerate_S = false;           // every mean S was zero
};

// Cells run on a pool of config.workers threads; results are reduced in
// (p_index, sim_index) order, so output does not depend on scheduling.
SweepResult run_sweep(const SweepConfig& config);

// CSV: p,C,L,S,C_norm,L_norm,S_norm,freq_hz,n_sims,seed,S_std,C_std,L_std
void write_sweep_csv(std::ostream& out, const SweepConfig& config, const SweepResult& result);

// Full configuration, a hash of it and per-cell seeds. With include_rows the
// aggregated rows are embedded as well (the JSON output format).
void write_sweep_json(std::ostream& out, const SweepConfig& config, const SweepResult& result,
                      bool include_rows);

std::string sweep_config_json(const SweepConfig& config);

} // namespace swsync
