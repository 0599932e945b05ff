#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace mntc::io {

using Cell = std::variant<double, std::string>;

/// Column-labeled table plus the provenance header (command name and the
/// config JSON it was produced from). Numbers are written at 12 significant
/// digits in CSV; both writers are byte-deterministic for identical inputs.
struct Dataset {
    std::string command;
    std::string config_json;
    std::vector<std::string> notes; ///< extra "# key: value" header lines
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

std::string format_number(double v);

void write_csv(std::ostream &out, const Dataset &data);
void write_json(std::ostream &out, const Dataset &data);

/// Writes in the requested format ("csv" | "json") to the path, creating
/// parent directories.
void write_file(const std::string &path, const std::string &format, const Dataset &data);

/// Extracts the embedded config JSON from a CSV header previously written by
/// write_csv. Throws ConfigError when the marker line is missing.
std::string read_csv_config(std::istream &in);

} // namespace mntc::io
