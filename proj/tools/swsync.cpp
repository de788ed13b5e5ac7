// swsync: small-world spiking network generator, simulator and sweep driver.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "swsync/analysis.h"
#include "swsync/config.h"
#include "swsync/errors.h"
#include "swsync/format.h"
#include "swsync/simulate.h"
#include "swsync/sweep.h"
#include "swsync/topology.h"

using namespace swsync;

namespace {

constexpr const char* kWorkersEnv = "SWSYNC_WORKERS";

// Values as typed on the command line. Each is applied only when its option
// was given, so flags win over the config file.
struct Flags {
    RunConfig defaults;
    std::string config_path;
    std::size_t n = defaults.network.units;
    std::size_t ne = defaults.network.excitatory;
    std::size_t ni = defaults.network.inhibitory;
    std::size_t k = defaults.network.degree;
    double p = defaults.network.p;
    std::uint64_t seed = defaults.seed;
    std::size_t duration = defaults.sim.duration;
    bool delay = false;
    std::uint32_t distance_scale = defaults.sim.distance_scale;
    std::size_t sims = defaults.sims;
    std::string p_grid = "default";
    std::string out;
    std::string format = "csv";
    std::string thalamic = "gaussian";
    std::string network;
    std::string series;
    std::string input;
};

struct Options {
    CLI::Option* n = nullptr;
    CLI::Option* ne = nullptr;
    CLI::Option* ni = nullptr;
    CLI::Option* k = nullptr;
    CLI::Option* p = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* duration = nullptr;
    CLI::Option* delay = nullptr;
    CLI::Option* distance_scale = nullptr;
    CLI::Option* sims = nullptr;
    CLI::Option* p_grid = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* thalamic = nullptr;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

void add_network_options(CLI::App& cmd, Flags& f, Options& o) {
    o.n = cmd.add_option("--n", f.n, "Number of units")->capture_default_str();
    o.ne = cmd.add_option("--ne", f.ne, "Excitatory units (default 0.8 N)")->capture_default_str();
    o.ni = cmd.add_option("--ni", f.ni, "Inhibitory units (default N - Ne)")->capture_default_str();
    o.k = cmd.add_option("--k", f.k, "Lattice degree, even")->capture_default_str();
    o.seed = cmd.add_option("--seed", f.seed, "Seed for topology, population and drive")
                 ->capture_default_str();
}

void add_sim_options(CLI::App& cmd, Flags& f, Options& o) {
    o.duration = cmd.add_option("--duration", f.duration, "Simulated time in ms")
                     ->capture_default_str();
    o.delay = cmd.add_flag("--delay", f.delay, "Enable distance-dependent conduction delays (default off)");
    o.distance_scale = cmd.add_option("--distance-scale", f.distance_scale,
                                      "Ring hops per ms of delay")
                           ->capture_default_str();
    o.thalamic = cmd.add_option("--thalamic", f.thalamic,
                                "Background drive shape: gaussian (t_e=3, t_i=11 as sigma) or "
                                "uniform (t * U[0,1))")
                     ->capture_default_str()
                     ->check(CLI::IsMember({"gaussian", "uniform"}));
}

void add_config_option(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config_path,
                   "JSON file with any of N, Ne, Ni, k, p, w_e (32), w_i (22), t_e (3), t_i (11), "
                   "duration, delay, distance_scale, seed, sims, p_grid, out, format")
        ->check(CLI::ExistingFile);
}

// Defaults, then the config file, then explicit flags.
RunConfig resolve(const Flags& f, const Options& o) {
    RunConfig c;
    if (!f.config_path.empty()) apply_config_file(f.config_path, c);
    if (given(o.n)) c.network.units = f.n;
    if (given(o.ne)) c.network.excitatory = f.ne;
    if (given(o.ni)) c.network.inhibitory = f.ni;
    if (given(o.n) || given(o.ne) || given(o.ni)) split_population(c.network, given(o.ne), given(o.ni));
    if (given(o.k)) c.network.degree = f.k;
    if (given(o.p)) c.network.p = f.p;
    if (given(o.seed)) c.seed = f.seed;
    if (given(o.duration)) c.sim.duration = f.duration;
    if (given(o.delay)) c.sim.delay_enabled = f.delay;
    if (given(o.distance_scale)) c.sim.distance_scale = f.distance_scale;
    if (given(o.sims)) c.sims = f.sims;
    if (given(o.p_grid) && f.p_grid != "default") c.p_grid = parse_p_grid(f.p_grid);
    if (given(o.out)) c.out = f.out;
    if (given(o.format)) c.format = parse_format(f.format);
    if (given(o.thalamic)) {
        c.sim.thalamic.distribution =
            f.thalamic == "uniform" ? ThalamicDistribution::Uniform : ThalamicDistribution::Gaussian;
    }
    c.sim.seed = c.seed;
    return c;
}

std::size_t workers_from_env() {
    const char* text = std::getenv(kWorkersEnv);
    if (text == nullptr || *text == '\0') {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    std::size_t n = 0;
    if (!parse_number(std::string_view(text), n) || n == 0) {
        throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer, got '" + text + "'");
    }
    return n;
}

std::string or_default(const std::string& path, const char* fallback) {
    return path.empty() ? std::string(fallback) : path;
}

int cmd_generate(const RunConfig& c) {
    const Network net = build_network(c.network, c.sim.weights, c.seed);
    const std::string path = or_default(c.out, "network.txt");
    write_network(path, net.topology, c.seed);
    std::cout << "N=" << net.topology.size() << " k=" << net.topology.degree()
              << " p=" << format_double(c.network.p) << " edges=" << net.topology.edges().size()
              << " file=" << path << '\n';
    return 0;
}

int cmd_metrics(const std::string& path) {
    const NetworkFile file = read_network(path);
    const double C = clustering_coefficient(file.topology);
    const PathLength L = characteristic_path_length(file.topology);
    std::cout << "C=" << format_double(C) << " L=" << format_double(L.mean);
    if (!L.connected) std::cout << " (disconnected; L over reachable pairs)";
    std::cout << '\n';
    return 0;
}

int cmd_simulate(const RunConfig& c, const std::string& network_path, const std::string& series_path) {
    Population pop;
    NetworkTopology topo;
    double p = c.network.p;
    std::uint64_t seed = c.seed;
    if (network_path.empty()) {
        Network net = build_network(c.network, c.sim.weights, c.seed);
        pop = std::move(net.population);
        topo = std::move(net.topology);
    } else {
        NetworkFile file = read_network(network_path);
        if (file.topology.size() != c.network.excitatory + c.network.inhibitory) {
            throw ConfigError("network file has " + std::to_string(file.topology.size()) +
                              " units but Ne + Ni = " +
                              std::to_string(c.network.excitatory + c.network.inhibitory));
        }
        // Same population the generator drew for this seed.
        Rng pop_rng(file.seed, Stream::Population);
        pop = make_population(file.topology.size(), c.network.excitatory, c.network.inhibitory,
                              pop_rng);
        topo = std::move(file.topology);
        p = topo.rewiring_probability();
        seed = file.seed;
    }
    SimConfig sim = c.sim;
    sim.seed = seed;
    const SpikeRaster raster = run_simulation(topo, pop, sim);
    const RunHeader header{topo.size(), sim.duration, seed, p};
    const std::string path = or_default(c.out, "raster.txt");
    write_raster(path, header, raster);
    if (!series_path.empty()) {
        const auto series = convolve_and_sum(raster, sim.duration);
        write_series(series_path, header, std::span<const double>(series));
    }
    std::cout << "spikes=" << raster.events.size() << " duration=" << sim.duration
              << " file=" << path << '\n';
    return 0;
}

int cmd_analyze(const std::string& raster_path, const std::string& series_path) {
    const RasterFile file = read_raster(raster_path);
    const auto series = convolve_and_sum(file.raster, file.header.duration);
    const SyncMeasure m = sync_measure(series);
    if (!series_path.empty()) write_series(series_path, file.header, std::span<const double>(series));
    std::cout << "S=" << format_double(m.S) << " freq="
              << (m.dominant_freq_hz ? format_double(*m.dominant_freq_hz) : std::string("nan"))
              << "Hz\n";
    return 0;
}

int cmd_sweep(const RunConfig& c) {
    SweepConfig sc;
    sc.p_grid = c.p_grid;
    sc.sims_per_p = c.sims;
    sc.base_seed = c.seed;
    sc.network = c.network;
    sc.sim = c.sim;
    sc.workers = workers_from_env();
    sc.validate();
    const SweepResult result = run_sweep(sc);

    const bool json = c.format == OutputFormat::Json;
    const std::string path = or_default(c.out, json ? "sweep.json" : "sweep.csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    if (json) {
        write_sweep_json(out, sc, result, true);
    } else {
        write_sweep_csv(out, sc, result);
        std::ofstream meta(path + ".json", std::ios::binary);
        if (!meta) throw IoError("cannot write " + path + ".json");
        write_sweep_json(meta, sc, result, false);
        if (!meta.flush()) throw IoError("write failed: " + path + ".json");
    }
    if (!out.flush()) throw IoError("write failed: " + path);
    if (result.degenerate_S) std::cerr << "warning: every mean S is zero; S_norm left at 0\n";
    std::cout << "rows=" << result.rows.size() << " sims=" << sc.sims_per_p << " file=" << path
              << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Small-world Izhikevich network generator, simulator and sweep driver"};
    app.require_subcommand(1);
    app.footer(std::string("Environment: ") + kWorkersEnv +
               " sets the sweep worker count (default: hardware threads).\n"
               "Exit codes: 0 ok, 1 invalid parameters, 2 I/O or parse error, 3 numeric fault.");

    Flags f;
    Options o_gen, o_sim, o_sweep;

    auto* gen = app.add_subcommand("generate", "Write a rewired ring lattice as an edge list");
    add_config_option(*gen, f);
    add_network_options(*gen, f, o_gen);
    o_gen.p = gen->add_option("--p", f.p, "Rewiring probability in [0, 1]")->capture_default_str();
    o_gen.out = gen->add_option("--out", f.out, "Output edge list")->default_str("network.txt");

    auto* met = app.add_subcommand("metrics", "Print clustering C and path length L of an edge list");
    met->add_option("network", f.input, "Edge list written by generate")->required();

    auto* sim = app.add_subcommand("simulate", "Simulate the network and write its spike raster");
    add_config_option(*sim, f);
    add_network_options(*sim, f, o_sim);
    o_sim.p = sim->add_option("--p", f.p, "Rewiring probability in [0, 1]")->capture_default_str();
    add_sim_options(*sim, f, o_sim);
    sim->add_option("--network", f.network,
                    "Simulate this edge list instead of generating one (population from its seed)");
    o_sim.out = sim->add_option("--out", f.out, "Output raster")->default_str("raster.txt");
    sim->add_option("--series", f.series, "Also write the smoothed population series");

    auto* ana = app.add_subcommand("analyze", "Print synchrony S and dominant frequency of a raster");
    ana->add_option("raster", f.input, "Raster written by simulate")->required();
    ana->add_option("--out", f.series, "Also write the smoothed population series");

    auto* swp = app.add_subcommand("sweep", "Run the ensemble over a grid of rewiring probabilities");
    add_config_option(*swp, f);
    add_network_options(*swp, f, o_sweep);
    add_sim_options(*swp, f, o_sweep);
    o_sweep.sims = swp->add_option("--sims", f.sims, "Simulations per p")->capture_default_str();
    o_sweep.p_grid = swp->add_option("--p-grid", f.p_grid,
                                     "Comma-separated p values; default is 0 and 1e-4..1 in "
                                     "quarter decades")
                         ->capture_default_str();
    o_sweep.out = swp->add_option("--out", f.out, "Output file (CSV gets a .json companion)")
                      ->default_str("sweep.csv");
    o_sweep.format = swp->add_option("--format", f.format, "csv or json")
                         ->capture_default_str()
                         ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen) return cmd_generate(resolve(f, o_gen));
        if (*met) return cmd_metrics(f.input);
        if (*sim) return cmd_simulate(resolve(f, o_sim), f.network, f.series);
        if (*ana) return cmd_analyze(f.input, f.series);
        if (*swp) return cmd_sweep(resolve(f, o_sweep));
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericFault& e) {
        std::cerr << "numeric fault: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
