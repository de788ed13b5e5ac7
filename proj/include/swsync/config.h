#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "swsync/simulate.h"
#include "swsync/sweep.h"

namespace swsync {

enum class OutputFormat { Csv, Json };

// Every tunable of the command-line tool. Defaults are the standard network:
// N=1000 (800 excitatory, 200 inhibitory), k=10, w_e=32, w_i=22, t_e=3,
// t_i=11, 2000 ms, distance scale 25.
struct RunConfig {
    NetworkSpec network;
    SimConfig sim;
    std::uint64_t seed = 1;
    std::size_t sims = 10;
    std::vector<double> p_grid = default_p_grid();
    std::string out;
    OutputFormat format = OutputFormat::Csv;
};

// Overlays keys from a JSON object onto `config`. Recognized keys:
// N, Ne, Ni, k, p, w_e, w_i, t_e, t_i, duration, delay, distance_scale,
// seed, sims, p_grid, out, format. Throws ConfigError on unknown keys or
// wrong types, IoError when the file cannot be read.
void apply_config_file(const std::string& path, RunConfig& config);
void apply_config_json(const std::string& json_text, RunConfig& config);

// Fills in whichever of Ne, Ni was not given so that Ne + Ni = N. With
// neither given the split is 80/20.
void split_population(NetworkSpec& spec, bool has_ne, bool has_ni);

OutputFormat parse_format(const std::string& text);

// Comma-separated probabilities, e.g. "0,0.001,0.01".
std::vector<double> parse_p_grid(const std::string& text);

} // namespace swsync
