#include "qrep/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qrep::io {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "# schema=" << table.schema << "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << fmt17(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

namespace {

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config parse error at line " +
                                     std::to_string(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        if (key.empty())
            throw std::runtime_error("config parse error at line " +
                                     std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_kv_text(ss.str());
}

namespace {

double to_double(const std::string& k, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw std::runtime_error("config key '" + k + "': not a number: " + v);
    }
}

int to_int(const std::string& k, const std::string& v) {
    const double d = to_double(k, v);
    if (d != static_cast<int>(d))
        throw std::runtime_error("config key '" + k + "': not an integer: " + v);
    return static_cast<int>(d);
}

bool to_bool(const std::string& k, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw std::runtime_error("config key '" + k + "': not a boolean: " + v);
}

}  // namespace

rates::RepeaterConfig config_from_kv(const std::map<std::string, std::string>& kv) {
    rates::RepeaterConfig c;
    for (const auto& [k, v] : kv) {
        if (k == "n_links") c.n_links = to_int(k, v);
        else if (k == "L0_km") c.L0_km = to_double(k, v);
        else if (k == "rounds") c.N_rounds = to_int(k, v);
        else if (k == "nbar") c.nbar = to_double(k, v);
        else if (k == "g_tau") c.g_tau = to_double(k, v);
        else if (k == "eta") c.eta = to_double(k, v);
        else if (k == "eps") c.eps = to_double(k, v);
        else if (k == "c_fiber") c.c_fiber = to_double(k, v);
        else if (k == "preset") c.hw = rates::hardware_preset(v);
        else if (k == "T_det") c.hw.T_det = to_double(k, v);
        else if (k == "super_link") c.super_link = to_bool(k, v);
        else if (k == "inner_n_links") c.inner_n_links = to_int(k, v);
        else if (k == "inner_L0_km") c.inner_L0_km = to_double(k, v);
        else if (k == "inner_rounds") c.inner_N_rounds = to_int(k, v);
        else throw std::runtime_error("unknown config key: " + k);
    }
    if (c.n_links < 1) throw std::runtime_error("config: n_links must be >= 1");
    if (c.eta < 0 || c.eta > 1) throw std::runtime_error("config: eta in [0,1]");
    return c;
}

std::map<std::string, std::string> kv_from_config(const rates::RepeaterConfig& c) {
    std::map<std::string, std::string> kv;
    kv["n_links"] = std::to_string(c.n_links);
    kv["L0_km"] = fmt17(c.L0_km);
    kv["rounds"] = std::to_string(c.N_rounds);
    kv["nbar"] = fmt17(c.nbar);
    kv["g_tau"] = fmt17(c.g_tau);
    kv["eta"] = fmt17(c.eta);
    kv["eps"] = fmt17(c.eps);
    kv["c_fiber"] = fmt17(c.c_fiber);
    kv["preset"] = c.hw.name;
    kv["T_det"] = fmt17(c.hw.t_det());
    kv["super_link"] = c.super_link ? "true" : "false";
    if (c.super_link) {
        kv["inner_n_links"] = std::to_string(c.inner_n_links);
        kv["inner_L0_km"] = fmt17(c.inner_L0_km);
        kv["inner_rounds"] = std::to_string(c.inner_N_rounds);
    }
    return kv;
}

void write_manifest(const RunManifest& m) {
    if (m.outputs.empty()) return;
    json j;
    j["command"] = m.command;
    j["tool_version"] = kToolVersion;
    j["seed"] = m.seed;
    j["config"] = m.resolved_config;
    j["outputs"] = m.outputs;
    j["duration_s"] = m.duration_s;
    const std::string path = m.outputs.front() + ".manifest.json";
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << j.dump(2) << "\n";
}

std::string rate_report_json(const rates::RateReport& r) {
    json j;
    j["T1_s"] = r.T1;
    j["T2_s"] = r.T2;
    j["T_link_s"] = r.T_link;
    j["T_swap_s"] = r.T_swap;
    j["A_n"] = r.A_n;
    j["j_extra"] = r.j_extra;
    j["N_bar"] = r.N_bar;
    j["R_per_s"] = r.R;
    j["benchmark_per_s"] = r.benchmark_rate;
    j["F_final"] = r.F_final;
    j["x"] = r.x;
    j["y"] = r.y;
    j["F_link_achieved"] = r.F_link_achieved;
    j["F_link_used"] = r.F_link_used;
    j["F_after_swaps"] = r.F_after_swaps;
    j["log_P"] = r.log_P;
    j["swap_rounds"] = r.swap_rounds;
    if (r.inner_P_gen > 0) {
        j["inner_R_per_s"] = r.inner_R;
        j["inner_P_gen"] = r.inner_P_gen;
        j["inner_x"] = r.inner_x;
    }
    return j.dump(2);
}

}  // namespace qrep::io
