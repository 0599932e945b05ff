#include "mntc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mntc/errors.hpp"

namespace mntc::cli {

using nlohmann::json;

namespace {

void check_keys(const json &obj, const std::string &path, std::initializer_list<const char *> allowed) {
    for (const auto &[key, value] : obj.items()) {
        bool ok = false;
        for (const char *a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_number(const json &obj, const std::string &path, const char *key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto &v = obj.at(key);
    if (!v.is_number()) throw ConfigError(path + "." + key, "must be a number");
    return v.get<double>();
}

GridSpec parse_grid(const json &node, const std::string &path) {
    if (!node.is_object()) throw ConfigError(path, "must be an object");
    check_keys(node, path, {"values", "min", "max", "count"});
    if (node.contains("values")) {
        if (node.contains("min") || node.contains("max") || node.contains("count"))
            throw ConfigError(path, "give either 'values' or 'min'/'max'/'count', not both");
        if (!node.at("values").is_array()) throw ConfigError(path + ".values", "must be an array");
        std::vector<double> values;
        for (const auto &v : node.at("values")) {
            if (!v.is_number()) throw ConfigError(path + ".values", "must contain numbers");
            values.push_back(v.get<double>());
        }
        return GridSpec::from_values(std::move(values));
    }
    if (!node.contains("min") || !node.contains("max") || !node.contains("count"))
        throw ConfigError(path, "needs 'values' or all of 'min', 'max', 'count'");
    const double lo = node.at("min").get<double>();
    const double hi = node.at("max").get<double>();
    const auto count = node.at("count").get<long>();
    if (count < 1) throw ConfigError(path + ".count", "must be >= 1");
    if (count > 1 && !(hi > lo)) throw ConfigError(path + ".max", "must exceed min");
    return GridSpec::uniform(lo, hi, count);
}

} // namespace

GridSpec GridSpec::from_values(std::vector<double> v) {
    GridSpec g;
    g.values = std::move(v);
    return g;
}

GridSpec GridSpec::uniform(double lo, double hi, long n) {
    GridSpec g;
    g.is_uniform = true;
    g.min = lo;
    g.max = hi;
    g.count = n;
    return g;
}

std::vector<double> GridSpec::materialize(const std::string &field) const {
    if (is_uniform) {
        std::vector<double> out;
        out.reserve(count);
        for (long i = 0; i < count; ++i)
            out.push_back(count == 1 ? min : min + (max - min) * double(i) / double(count - 1));
        return out;
    }
    if (values.empty()) throw ConfigError(field, "must be non-empty");
    return values;
}

RunConfig parse_config_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config", "top level must be an object");
    check_keys(doc, "", {"model", "packet", "grids", "output", "seed", "input"});

    RunConfig config;
    if (doc.contains("model")) {
        const auto &m = doc.at("model");
        check_keys(m, "model", {"omega_m", "omega_c", "g", "gamma", "n_modes"});
        config.model.omega_m = get_number(m, "model", "omega_m", config.model.omega_m);
        config.model.omega_c = get_number(m, "model", "omega_c", config.model.omega_c);
        config.model.g = get_number(m, "model", "g", config.model.g);
        config.model.gamma = get_number(m, "model", "gamma", config.model.gamma);
        if (m.contains("n_modes")) {
            if (!m.at("n_modes").is_number_integer())
                throw ConfigError("model.n_modes", "must be an integer");
            config.model.n_modes = m.at("n_modes").get<int>();
        }
        validate(config.model);
    }

    if (doc.contains("packet")) {
        const auto &p = doc.at("packet");
        check_keys(p, "packet", {"p", "w", "branch"});
        if (p.contains("p")) {
            config.packet.p = get_number(p, "packet", "p", config.packet.p);
            config.packet_p_set = true;
        }
        if (p.contains("w")) {
            config.packet.w = get_number(p, "packet", "w", config.packet.w);
            config.packet_w_set = true;
        }
        if (p.contains("branch")) {
            const std::string b = p.at("branch").get<std::string>();
            if (b == "up")
                config.packet.branch = Branch::up;
            else if (b == "lp")
                config.packet.branch = Branch::lp;
            else
                throw ConfigError("packet.branch", "must be 'up' or 'lp'");
        }
    }

    if (doc.contains("grids")) {
        const auto &g = doc.at("grids");
        check_keys(g, "grids", {"q", "gamma", "t"});
        if (g.contains("q")) config.q_grid = parse_grid(g.at("q"), "grids.q");
        if (g.contains("gamma")) config.gamma_grid = parse_grid(g.at("gamma"), "grids.gamma");
        if (g.contains("t")) {
            const auto &t = g.at("t");
            check_keys(t, "grids.t", {"dt", "t_max"});
            config.time_grid.dt = get_number(t, "grids.t", "dt", config.time_grid.dt);
            config.time_grid.t_max = get_number(t, "grids.t", "t_max", config.time_grid.t_max);
            if (!(config.time_grid.dt > 0.0)) throw ConfigError("grids.t.dt", "must be > 0");
            if (!(config.time_grid.t_max >= 0.0)) throw ConfigError("grids.t.t_max", "must be >= 0");
        }
    }

    if (doc.contains("output")) {
        const auto &o = doc.at("output");
        check_keys(o, "output", {"path", "format"});
        if (o.contains("path")) config.output.path = o.at("path").get<std::string>();
        if (o.contains("format")) {
            config.output.format = o.at("format").get<std::string>();
            if (config.output.format != "csv" && config.output.format != "json")
                throw ConfigError("output.format", "must be 'csv' or 'json'");
        }
    }

    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_integer()) throw ConfigError("seed", "must be an integer");
        config.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("input")) config.input_path = doc.at("input").get<std::string>();

    return config;
}

RunConfig load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string to_json(const RunConfig &config) {
    json doc;
    doc["model"] = {{"omega_m", config.model.omega_m},
                    {"omega_c", config.model.omega_c},
                    {"g", config.model.g},
                    {"gamma", config.model.gamma},
                    {"n_modes", config.model.n_modes}};
    doc["packet"] = {{"p", config.packet.p},
                     {"w", config.packet.w},
                     {"branch", config.packet.branch == Branch::up ? "up" : "lp"}};
    const auto grid_json = [](const GridSpec &g) -> json {
        if (g.is_uniform) return {{"min", g.min}, {"max", g.max}, {"count", g.count}};
        return {{"values", g.values}};
    };
    json grids;
    if (config.q_grid) grids["q"] = grid_json(*config.q_grid);
    if (config.gamma_grid) grids["gamma"] = grid_json(*config.gamma_grid);
    grids["t"] = {{"dt", config.time_grid.dt}, {"t_max", config.time_grid.t_max}};
    doc["grids"] = std::move(grids);
    doc["output"] = {{"path", config.output.path}, {"format", config.output.format}};
    doc["seed"] = config.seed;
    if (!config.input_path.empty()) doc["input"] = config.input_path;
    return doc.dump();
}

} // namespace mntc::cli
