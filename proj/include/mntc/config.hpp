#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mntc/model.hpp"
#include "mntc/moments.hpp"
#include "mntc/wavepacket.hpp"

namespace mntc::cli {

/// Either an explicit value list or a uniform [min, max] grid with `count`
/// points (count = 1 collapses to {min}). The symbolic form survives into
/// provenance headers.
struct GridSpec {
    std::vector<double> values; ///< explicit list; empty when uniform
    bool is_uniform = false;
    double min = 0.0, max = 0.0;
    long count = 0;

    static GridSpec from_values(std::vector<double> v);
    static GridSpec uniform(double lo, double hi, long n);
    std::vector<double> materialize(const std::string &field) const;
};

struct OutputSpec {
    std::string path;           ///< empty = stdout
    std::string format = "csv"; ///< csv | json
};

/// One run request. Parsed strictly: unknown keys are rejected with the
/// offending key named. Branch-dependent defaults are resolved per
/// subcommand at dispatch.
struct RunConfig {
    ModelParams model;
    wavepacket::Spec packet;
    bool packet_p_set = false;      ///< p given explicitly
    bool packet_w_set = false;      ///< w given explicitly
    std::optional<GridSpec> q_grid;
    std::optional<GridSpec> gamma_grid;
    moments::TimeGrid time_grid;
    OutputSpec output;
    std::uint64_t seed = 0;
    std::string input_path; ///< fit: previously emitted trajectory CSV
};

RunConfig parse_config_json(const std::string &text);
RunConfig load_config_file(const std::string &path);

/// Canonical JSON for provenance headers; parse_config_json() of the result
/// reproduces the config.
std::string to_json(const RunConfig &config);

} // namespace mntc::cli
