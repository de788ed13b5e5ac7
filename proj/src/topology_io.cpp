#include <fstream>
#include <ostream>

#include "swsync/errors.h"
#include "swsync/format.h"
#include "swsync/topology.h"
#include "text_io.h"

namespace swsync {

void write_network(std::ostream& out, const NetworkTopology& topo, std::uint64_t seed) {
    out << topo.size() << ' ' << topo.degree() << ' ' << format_double(topo.rewiring_probability())
        << ' ' << seed << '\n';
    for (const Edge& e : topo.edges()) {
        out << e.source << ' ' << e.destination << ' ' << format_double(e.weight) << ' '
            << e.ring_distance << '\n';
    }
}

void write_network(const std::string& path, const NetworkTopology& topo, std::uint64_t seed) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_network(out, topo, seed);
    if (!out.flush()) throw IoError("failed writing " + path);
}

NetworkFile read_network(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::next_line(in, line, line_no)) {
        throw ParseError(name, line_no + 1, "missing header 'N k p seed'");
    }
    auto header = detail::split_fields(line);
    std::size_t n = 0, k = 0;
    double p = 0;
    std::uint64_t seed = 0;
    if (header.size() != 4 || !parse_number(header[0], n) || !parse_number(header[1], k) ||
        !parse_number(header[2], p) || !parse_number(header[3], seed)) {
        throw ParseError(name, line_no, "malformed header, expected 'N k p seed'");
    }

    std::vector<Edge> edges;
    edges.reserve(n * k);
    while (detail::next_line(in, line, line_no)) {
        auto f = detail::split_fields(line);
        Edge e;
        if (f.size() != 4 || !parse_number(f[0], e.source) || !parse_number(f[1], e.destination) ||
            !parse_number(f[2], e.weight) || !parse_number(f[3], e.ring_distance)) {
            throw ParseError(name, line_no,
                             "malformed edge, expected 'source destination weight ring_distance'");
        }
        edges.push_back(e);
    }
    if (edges.size() != n * k) {
        throw ParseError(name, line_no + 1,
                         "truncated edge list: header promises " + std::to_string(n * k) +
                             " edges, found " + std::to_string(edges.size()));
    }
    try {
        return {NetworkTopology(n, k, p, std::move(edges)), seed};
    } catch (const ConfigError& err) {
        throw ParseError(name, line_no, err.what());
    }
}

NetworkFile read_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return read_network(in, path);
}

} // namespace swsync
