#include "mntc/dataset.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "mntc/errors.hpp"
#include "mntc/version.hpp"

namespace mntc::io {

void Dataset::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::logic_error("dataset row width does not match column count");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(std::ostream &out, const Dataset &data) {
    out << "# mntc " << data.command << " v" << kVersion << "\n";
    out << "# config: " << data.config_json << "\n";
    for (const auto &note : data.notes) out << "# " << note << "\n";
    for (std::size_t i = 0; i < data.columns.size(); ++i)
        out << data.columns[i] << (i + 1 < data.columns.size() ? "," : "\n");
    for (const auto &row : data.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double *d = std::get_if<double>(&row[i]))
                out << format_number(*d);
            else
                out << std::get<std::string>(row[i]);
            out << (i + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_json(std::ostream &out, const Dataset &data) {
    nlohmann::json doc;
    doc["tool"] = "mntc";
    doc["version"] = kVersion;
    doc["command"] = data.command;
    doc["config"] = nlohmann::json::parse(data.config_json);
    if (!data.notes.empty()) doc["notes"] = data.notes;
    doc["columns"] = data.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : data.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto &cell : row) {
            if (const double *d = std::get_if<double>(&cell))
                r.push_back(*d);
            else
                r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(1) << "\n";
}

void write_file(const std::string &path, const std::string &format, const Dataset &data) {
    if (format != "csv" && format != "json")
        throw ConfigError("output.format", "must be 'csv' or 'json'");
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::trunc | std::ios::binary);
    if (!out) throw ConfigError("output.path", "cannot open for writing: " + path);
    if (format == "csv")
        write_csv(out, data);
    else
        write_json(out, data);
}

std::string read_csv_config(std::istream &in) {
    std::string line;
    const std::string marker = "# config: ";
    while (std::getline(in, line)) {
        if (line.rfind(marker, 0) == 0) return line.substr(marker.size());
        if (!line.empty() && line[0] != '#') break;
    }
    throw ConfigError("input", "no '# config:' header line found");
}

} // namespace mntc::io
