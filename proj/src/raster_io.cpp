#include <fstream>
#include <ostream>

#include "swsync/errors.h"
#include "swsync/format.h"
#include "swsync/simulate.h"
#include "text_io.h"

namespace swsync {

namespace {

void write_header(std::ostream& out, const RunHeader& h) {
    out << h.units << ' ' << h.duration << ' ' << h.seed << ' ' << format_double(h.p) << '\n';
}

template <class Body>
void write_file(const std::string& path, Body&& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    body(out);
    if (!out.flush()) throw IoError("failed writing " + path);
}

} // namespace

void write_raster(std::ostream& out, const RunHeader& header, const SpikeRaster& raster) {
    write_header(out, header);
    for (const SpikeEvent& e : raster.events) out << e.tick << ' ' << e.unit << '\n';
}

void write_raster(const std::string& path, const RunHeader& header, const SpikeRaster& raster) {
    write_file(path, [&](std::ostream& out) { write_raster(out, header, raster); });
}

void write_series(std::ostream& out, const RunHeader& header, std::span<const double> values) {
    write_header(out, header);
    for (double v : values) out << format_double(v) << '\n';
}

void write_series(std::ostream& out, const RunHeader& header,
                  std::span<const std::uint32_t> values) {
    write_header(out, header);
    for (auto v : values) out << v << '\n';
}

void write_series(const std::string& path, const RunHeader& header,
                  std::span<const double> values) {
    write_file(path, [&](std::ostream& out) { write_series(out, header, values); });
}

void write_series(const std::string& path, const RunHeader& header,
                  std::span<const std::uint32_t> values) {
    write_file(path, [&](std::ostream& out) { write_series(out, header, values); });
}

RasterFile read_raster(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::next_line(in, line, line_no)) {
        throw ParseError(name, line_no + 1, "missing header 'N duration seed p'");
    }
    RasterFile file;
    RunHeader& h = file.header;
    auto f = detail::split_fields(line);
    if (f.size() != 4 || !parse_number(f[0], h.units) || !parse_number(f[1], h.duration) ||
        !parse_number(f[2], h.seed) || !parse_number(f[3], h.p)) {
        throw ParseError(name, line_no, "malformed header, expected 'N duration seed p'");
    }
    file.raster.units = h.units;
    file.raster.duration = h.duration;

    while (detail::next_line(in, line, line_no)) {
        f = detail::split_fields(line);
        SpikeEvent e;
        if (f.size() != 2 || !parse_number(f[0], e.tick) || !parse_number(f[1], e.unit)) {
            throw ParseError(name, line_no, "malformed event, expected 'tick unit'");
        }
        if (e.tick >= h.duration || e.unit >= h.units) {
            throw ParseError(name, line_no, "event outside [0, duration) x [0, N)");
        }
        if (!file.raster.events.empty() && e.tick < file.raster.events.back().tick) {
            throw ParseError(name, line_no, "events out of tick order");
        }
        file.raster.events.push_back(e);
    }
    return file;
}

RasterFile read_raster(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return read_raster(in, path);
}

} // namespace swsync
