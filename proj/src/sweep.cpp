#include "swsync/sweep.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "swsync/errors.h"
#include "swsync/format.h"

namespace swsync {

std::vector<double> default_p_grid() {
    std::vector<double> grid{0.0};
    for (int i = 0; i <= 16; ++i) grid.push_back(std::pow(10.0, -4.0 + 0.25 * i));
    grid.back() = 1.0;
    return grid;
}

void SweepConfig::validate() const {
    if (p_grid.empty()) throw ConfigError("p grid is empty");
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p grid values must lie in [0, 1]");
    }
    if (sims_per_p < 1) throw ConfigError("sims per p must be at least 1");
    if (workers < 1) throw ConfigError("worker count must be at least 1");
    NetworkSpec spec = network;
    spec.p = 0.0;
    spec.validate();
    sim.validate();
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t p_index, std::size_t sim_index) {
    if (p_index > UINT32_MAX || sim_index > UINT32_MAX) {
        throw ConfigError("sweep indices must fit in 32 bits");
    }
    const std::uint64_t key = (std::uint64_t{p_index} << 32) | std::uint64_t{sim_index};
    return mix64(mix64(base_seed) ^ key);
}

CellResult run_cell(const NetworkSpec& network, const SimConfig& sim, double p, std::uint64_t seed) {
    NetworkSpec spec = network;
    spec.p = p;
    const Network net = build_network(spec, sim.weights, seed);

    CellResult cell;
    cell.seed = seed;
    cell.clustering = clustering_coefficient(net.topology);
    cell.path_length = characteristic_path_length(net.topology);

    SimConfig cfg = sim;
    cfg.seed = seed;
    const SpikeRaster raster = run_simulation(net.topology, net.population, cfg);
    const auto field = convolve_and_sum(raster, cfg.duration);
    cell.sync = sync_measure(field);
    return cell;
}

namespace {

struct Moments {
    double mean = 0;
    double stddev = 0;
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return m;
}

SweepRow aggregate(double p, const std::vector<CellResult>& cells) {
    std::vector<double> cs, ls, ss, fs;
    SweepRow row;
    row.p = p;
    row.n_sims = cells.size();
    for (const CellResult& c : cells) {
        cs.push_back(c.clustering);
        if (c.path_length.connected) {
            ls.push_back(c.path_length.mean);
        } else {
            ++row.disconnected;
        }
        ss.push_back(c.sync.S);
        if (c.sync.dominant_freq_hz) fs.push_back(*c.sync.dominant_freq_hz);
    }
    const Moments mc = moments(cs), ml = moments(ls), ms = moments(ss);
    row.C = mc.mean;
    row.C_std = mc.stddev;
    row.L = ls.empty() ? std::numeric_limits<double>::quiet_NaN() : ml.mean;
    row.L_std = ml.stddev;
    row.S = ms.mean;
    row.S_std = ms.stddev;
    row.freq_hz = fs.empty() ? std::numeric_limits<double>::quiet_NaN() : moments(fs).mean;
    return row;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const std::size_t np = config.p_grid.size();
    const std::size_t ns = config.sims_per_p;
    const std::size_t total = np * ns;

    SweepResult result;
    result.cells.assign(np, std::vector<CellResult>(ns));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const std::size_t pi = i / ns, si = i % ns;
            try {
                result.cells[pi][si] = run_cell(config.network, config.sim, config.p_grid[pi],
                                                derive_seed(config.base_seed, pi, si));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };
    const std::size_t threads = std::min(config.workers, total);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    const NetworkTopology lattice = make_ring_lattice(config.network.units, config.network.degree);
    result.C0 = clustering_coefficient(lattice);
    result.L0 = characteristic_path_length(lattice).mean;

    std::vector<double> mean_s;
    for (std::size_t pi = 0; pi < np; ++pi) {
        SweepRow row = aggregate(config.p_grid[pi], result.cells[pi]);
        row.C_norm = result.C0 > 0 ? row.C / result.C0 : 0.0;
        row.L_norm = result.L0 > 0 ? row.L / result.L0 : 0.0;
        mean_s.push_back(row.S);
        result.rows.push_back(row);
    }
    const NormalizedS norm = normalize_S(mean_s);
    result.degenerate_S = norm.degenerate;
    for (std::size_t pi = 0; pi < np; ++pi) result.rows[pi].S_norm = norm.values[pi];
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepConfig& config, const SweepResult& result) {
    out << "p,C,L,S,C_norm,L_norm,S_norm,freq_hz,n_sims,seed,S_std,C_std,L_std\n";
    for (const SweepRow& r : result.rows) {
        out << format_double(r.p) << ',' << format_double(r.C) << ',' << format_double(r.L) << ','
            << format_double(r.S) << ',' << format_double(r.C_norm) << ','
            << format_double(r.L_norm) << ',' << format_double(r.S_norm) << ','
            << format_double(r.freq_hz) << ',' << r.n_sims << ',' << config.base_seed << ','
            << format_double(r.S_std) << ',' << format_double(r.C_std) << ','
            << format_double(r.L_std) << '\n';
    }
}

namespace {

nlohmann::ordered_json config_to_json(const SweepConfig& c) {
    nlohmann::ordered_json j;
    j["p_grid"] = c.p_grid;
    j["sims_per_p"] = c.sims_per_p;
    j["base_seed"] = c.base_seed;
    j["network"] = {{"N", c.network.units},
                    {"Ne", c.network.excitatory},
                    {"Ni", c.network.inhibitory},
                    {"k", c.network.degree}};
    j["sim"] = {{"duration_ms", c.sim.duration},
                {"w_e", c.sim.weights.excitatory},
                {"w_i", c.sim.weights.inhibitory},
                {"t_e", c.sim.thalamic.excitatory},
                {"t_i", c.sim.thalamic.inhibitory},
                {"delay_enabled", c.sim.delay_enabled},
                {"distance_scale", c.sim.distance_scale},
                {"divergence_ceiling", c.sim.divergence_ceiling}};
    return j;
}

// FNV-1a over the canonical config text.
std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

nlohmann::ordered_json number_or_null(double x) {
    return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
}

} // namespace

std::string sweep_config_json(const SweepConfig& config) {
    return config_to_json(config).dump();
}

void write_sweep_json(std::ostream& out, const SweepConfig& config, const SweepResult& result,
                      bool include_rows) {
    nlohmann::ordered_json j;
    const std::string canonical = sweep_config_json(config);
    j["config"] = config_to_json(config);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
    j["config_hash"] = hash;
    j["baseline"] = {{"C0", result.C0}, {"L0", result.L0}};
    j["degenerate_S"] = result.degenerate_S;

    auto seeds = nlohmann::ordered_json::array();
    for (const auto& row : result.cells) {
        auto r = nlohmann::ordered_json::array();
        for (const CellResult& c : row) r.push_back(c.seed);
        seeds.push_back(r);
    }
    j["seeds"] = seeds;

    auto disconnected = nlohmann::ordered_json::array();
    for (const SweepRow& r : result.rows) disconnected.push_back(r.disconnected);
    j["disconnected_networks"] = disconnected;

    if (include_rows) {
        auto rows = nlohmann::ordered_json::array();
        for (const SweepRow& r : result.rows) {
            rows.push_back({{"p", r.p},
                            {"C", r.C},
                            {"L", number_or_null(r.L)},
                            {"S", r.S},
                            {"C_norm", r.C_norm},
                            {"L_norm", number_or_null(r.L_norm)},
                            {"S_norm", r.S_norm},
                            {"freq_hz", number_or_null(r.freq_hz)},
                            {"n_sims", r.n_sims},
                            {"S_std", r.S_std},
                            {"C_std", r.C_std},
                            {"L_std", r.L_std}});
        }
        j["rows"] = rows;
    }
    out << j.dump(2) << '\n';
}

} // namespace swsync
