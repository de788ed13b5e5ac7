#pragma once

// Line-oriented helpers shared by the plain-text readers.

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace swsync::detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

// Next non-blank line; false at end of input. `line_no` tracks the 1-based
// number of the returned line.
inline bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

} // namespace swsync::detail
