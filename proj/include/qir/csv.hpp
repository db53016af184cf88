#pragma once

#include <string>
#include <vector>

namespace qir {

/// Shortest representation that round-trips exactly through parse_double_exact.
std::string format_double(double v);

/// Strict double parse; throws on trailing garbage or empty input.
double parse_double_exact(const std::string& s);

/// Header row plus string cells; serialized with LF line endings and '.'
/// decimal separators only.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string serialize() const;
    static CsvTable parse(const std::string& text);
    static CsvTable load(const std::string& path);
};

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

} // namespace qir
