#include "swsync/config.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swsync/errors.h"
#include "swsync/format.h"

namespace swsync {

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + text + "' (expected csv or json)");
}

std::vector<double> parse_p_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string_view item(text.data() + start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double p = 0;
        if (!parse_number(item, p) || !(p >= 0.0 && p <= 1.0)) {
            throw ConfigError("invalid p grid entry '" + std::string(item) + "'");
        }
        grid.push_back(p);
        start = end + 1;
    }
    return grid;
}

void split_population(NetworkSpec& spec, bool has_ne, bool has_ni) {
    const std::size_t n = spec.units;
    if (!has_ne && !has_ni) {
        spec.excitatory = n * 4 / 5;
        spec.inhibitory = n - spec.excitatory;
    } else if (!has_ni) {
        spec.inhibitory = n - std::min(spec.excitatory, n);
    } else if (!has_ne) {
        spec.excitatory = n - std::min(spec.inhibitory, n);
    }
}

void apply_config_json(const std::string& json_text, RunConfig& c) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");

    try {
        const bool has_ne = j.contains("Ne");
        const bool has_ni = j.contains("Ni");
        for (const auto& [key, value] : j.items()) {
            if (key == "N") c.network.units = value.get<std::size_t>();
            else if (key == "Ne") c.network.excitatory = value.get<std::size_t>();
            else if (key == "Ni") c.network.inhibitory = value.get<std::size_t>();
            else if (key == "k") c.network.degree = value.get<std::size_t>();
            else if (key == "p") c.network.p = value.get<double>();
            else if (key == "w_e") c.sim.weights.excitatory = value.get<double>();
            else if (key == "w_i") c.sim.weights.inhibitory = value.get<double>();
            else if (key == "t_e") c.sim.thalamic.excitatory = value.get<double>();
            else if (key == "t_i") c.sim.thalamic.inhibitory = value.get<double>();
            else if (key == "duration") c.sim.duration = value.get<std::size_t>();
            else if (key == "delay") c.sim.delay_enabled = value.get<bool>();
            else if (key == "distance_scale") c.sim.distance_scale = value.get<std::uint32_t>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "sims") c.sims = value.get<std::size_t>();
            else if (key == "p_grid") c.p_grid = value.get<std::vector<double>>();
            else if (key == "out") c.out = value.get<std::string>();
            else if (key == "format") c.format = parse_format(value.get<std::string>());
            else throw ConfigError("unknown config key '" + key + "'");
        }
        if (j.contains("N") || has_ne || has_ni) split_population(c.network, has_ne, has_ni);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
}

void apply_config_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_json(text.str(), config);
}

} // namespace swsync
