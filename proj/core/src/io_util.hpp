#ifndef CCDIV_IO_UTIL_HPP
#define CCDIV_IO_UTIL_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ccdiv/errors.hpp"

// File and text helpers shared by the library's writers; not installed.

namespace ccdiv::detail {

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw UsageError("write failed for " + path.string());
}

// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace ccdiv::detail

#endif
