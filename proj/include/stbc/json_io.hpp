#ifndef STBC_JSON_IO_HPP
#define STBC_JSON_IO_HPP

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stbc/code.hpp"
#include "stbc/diversity.hpp"
#include "stbc/sim.hpp"
#include "stbc/version.hpp"

namespace stbc {

using json = nlohmann::ordered_json;

namespace detail {

inline json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (const cplx& z : m.data()) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

inline Matrix matrix_from_json(const json& j, int rows, int cols, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(rows * cols) +
                                    " complex entries");
    Matrix m(rows, cols);
    for (int i = 0; i < rows * cols; ++i) {
        const json& e = j[i];
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument(std::string(what) + ": complex entries must be [re, im]");
        m.data()[i] = cplx(e[0].get<double>(), e[1].get<double>());
    }
    if (!m.finite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
    return m;
}

}  // namespace detail

inline json code_to_json(const Code& code) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["nt"] = code.nt;
    j["m"] = code.m;
    j["n"] = code.n;
    j["g"] = code.g;
    j["weights"] = json::array();
    for (const Matrix& w : code.weights) j["weights"].push_back(detail::matrix_to_json(w));
    j["grouping"] = code.grouping.assignment;
    json meta;
    meta["kind"] = code.meta.kind;
    meta["inner_form"] = code.meta.inner_form;
    meta["u_choice"] = code.meta.u_choice;
    meta["diagonal_form"] = code.meta.diagonal_form;
    meta["generator_order"] = code.meta.generator_order;
    if (code.meta.diagonal_form) {
        meta["b_vectors"] = code.meta.b_vectors;
        meta["u"] = detail::matrix_to_json(code.meta.u);
    }
    j["meta"] = meta;
    return j;
}

inline Code code_from_json(const json& j) {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
        throw std::invalid_argument("code_from_json: unsupported schema version");
    Code code;
    code.nt = j.at("nt").get<int>();
    code.m = j.at("m").get<int>();
    code.n = j.at("n").get<int>();
    code.g = j.at("g").get<int>();
    if (code.nt <= 0 || code.m <= 0 || code.n <= 0 || code.g <= 0 || code.nt != code.m * code.n)
        throw std::invalid_argument("code_from_json: inconsistent dimensions");
    const json& weights = j.at("weights");
    for (const json& w : weights)
        code.weights.push_back(detail::matrix_from_json(w, code.nt, code.nt, "weights"));
    if (code.K() != code.g * code.n) throw std::invalid_argument("code_from_json: expected K = g*n weights");
    const json& grouping = j.at("grouping");
    if (static_cast<int>(grouping.size()) != code.K())
        throw std::invalid_argument("code_from_json: grouping length must equal K");
    int gmax = -1;
    for (const json& e : grouping) {
        const int v = e.get<int>();
        if (v < 0) throw std::invalid_argument("code_from_json: negative group label");
        code.grouping.assignment.push_back(v);
        gmax = std::max(gmax, v);
    }
    code.grouping.group_count = gmax + 1;
    if (j.contains("meta")) {
        const json& meta = j["meta"];
        code.meta.kind = meta.value("kind", "custom");
        code.meta.inner_form = meta.value("inner_form", "custom");
        code.meta.u_choice = meta.value("u_choice", "custom");
        code.meta.diagonal_form = meta.value("diagonal_form", false);
        code.meta.generator_order = meta.value("generator_order", "v1");
        if (code.meta.diagonal_form) {
            code.meta.b_vectors = meta.at("b_vectors").get<std::vector<std::vector<int>>>();
            code.meta.u = detail::matrix_from_json(meta.at("u"), code.n, code.n, "meta.u");
        }
    }
    return code;
}

inline json constellation_to_json(const Constellation& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = c.dim;
    j["points"] = c.points;
    return j;
}

inline Constellation constellation_from_json(const json& j) {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
        throw std::invalid_argument("constellation_from_json: unsupported schema version");
    Constellation c;
    c.dim = j.at("dim").get<int>();
    c.points = j.at("points").get<std::vector<std::vector<double>>>();
    c.validate();
    return c;
}

inline json partition_to_json(const Partition& p) {
    json j;
    j["group_count"] = p.group_count;
    j["assignment"] = p.assignment;
    j["groups"] = p.groups();
    return j;
}

inline void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    json j;
    in >> j;
    return j;
}

inline json sim_config_to_json(const SimResult& r) {
    json cfg;
    cfg["snr_points_db"] = r.config.snr_points_db;
    cfg["trials_per_point"] = r.config.trials_per_point;
    cfg["n_r"] = r.config.n_r;
    cfg["seed"] = r.config.seed;
    cfg["decoder"] = r.config.decoder;
    cfg["threads"] = r.config.threads;
    cfg["bits_per_trial"] = r.bits_per_trial;
    cfg["bits_per_channel_use"] = r.bits_per_channel_use;
    cfg["avg_codeword_energy"] = r.avg_codeword_energy;
    cfg["bit_mapping"] = r.bit_mapping;
    cfg["snr_definition"] = r.snr_definition;
    return cfg;
}

inline void write_sim_csv(const SimResult& r, std::ostream& out) {
    out << "# stbc " << kVersion << " simulate\n";
    out << "# config " << sim_config_to_json(r).dump() << "\n";
    out << "snr_db,trials,bit_errors,ber,sym_errors,ser,decoder,seed\n";
    char line[256];
    for (const SnrPointResult& p : r.points) {
        std::snprintf(line, sizeof line, "%.10g,%lld,%lld,%.10g,%lld,%.10g,%s,%llu\n", p.snr_db,
                      p.trials, p.bit_errors, p.ber, p.sym_errors, p.ser, p.decoder.c_str(),
                      static_cast<unsigned long long>(r.config.seed));
        out << line;
    }
}

}  // namespace stbc

#endif  // STBC_JSON_IO_HPP
