#ifndef STBC_SIM_HPP
#define STBC_SIM_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "stbc/code.hpp"
#include "stbc/decode.hpp"
#include "stbc/diversity.hpp"
#include "stbc/matrix.hpp"
#include "stbc/rng.hpp"

namespace stbc {

struct DecodeResult {
    std::vector<int> group_indices;   // chosen constellation index per group
    std::vector<double> symbols;      // full length-K symbol vector
    long long metric_evaluations = 0;
};

namespace detail {

inline std::vector<Matrix> weight_channel_products(const Code& code, const Matrix& h) {
    std::vector<Matrix> wh;
    wh.reserve(code.weights.size());
    for (const Matrix& w : code.weights) wh.push_back(w * h);
    return wh;
}

inline double residual_norm_sq(const Matrix& y, const Matrix& sh) {
    double s = 0.0;
    for (size_t i = 0; i < y.data().size(); ++i) s += std::norm(y.data()[i] - sh.data()[i]);
    return s;
}

inline void scatter_symbols(const std::vector<std::vector<int>>& groups,
                            const Constellation& per_group, const std::vector<int>& idx,
                            std::vector<double>& x) {
    for (size_t k = 0; k < groups.size(); ++k)
        for (size_t pos = 0; pos < groups[k].size(); ++pos)
            x[groups[k][pos]] = per_group.points[idx[k]][pos];
}

}  // namespace detail

/// Per-group ML decoding: each group is minimized independently over the
/// per-group signal set (sum_k |A_k| metric evaluations). Ties go to the
/// lowest constellation index.
inline DecodeResult groupwise_ml_decode(const Code& code, const Partition& part,
                                        const Constellation& per_group, const Matrix& y,
                                        const Matrix& h) {
    const auto groups = part.groups();
    for (const auto& members : groups)
        if (static_cast<int>(members.size()) != per_group.dim)
            throw std::invalid_argument("groupwise_ml_decode: constellation dim must equal the group size");
    if (h.rows() != code.nt || y.rows() != code.nt || y.cols() != h.cols())
        throw std::invalid_argument("groupwise_ml_decode: shape mismatch");

    const auto wh = detail::weight_channel_products(code, h);
    DecodeResult out;
    out.symbols.assign(code.K(), 0.0);
    for (size_t k = 0; k < groups.size(); ++k) {
        int best_idx = 0;
        double best_metric = std::numeric_limits<double>::infinity();
        for (size_t p = 0; p < per_group.points.size(); ++p) {
            Matrix sh(code.nt, h.cols());
            for (size_t pos = 0; pos < groups[k].size(); ++pos)
                sh += per_group.points[p][pos] * wh[groups[k][pos]];
            const double metric = detail::residual_norm_sq(y, sh);
            ++out.metric_evaluations;
            if (metric < best_metric) {
                best_metric = metric;
                best_idx = static_cast<int>(p);
            }
        }
        out.group_indices.push_back(best_idx);
    }
    detail::scatter_symbols(groups, per_group, out.group_indices, out.symbols);
    return out;
}

/// Joint ML decoding over the full product set (prod_k |A_k| evaluations).
/// Ties go to the lexicographically smallest index tuple, which matches the
/// groupwise tie-break.
inline DecodeResult exhaustive_ml_decode(const Code& code, const Partition& part,
                                         const Constellation& per_group, const Matrix& y,
                                         const Matrix& h) {
    const auto groups = part.groups();
    const int g = static_cast<int>(groups.size());
    double total = 1.0;
    for (int k = 0; k < g; ++k) total *= static_cast<double>(per_group.points.size());
    if (total > 1e6) throw std::invalid_argument("exhaustive_ml_decode: enumeration budget exceeded");

    const auto wh = detail::weight_channel_products(code, h);
    DecodeResult out;
    out.symbols.assign(code.K(), 0.0);
    std::vector<int> idx(g, 0);
    std::vector<int> best = idx;
    double best_metric = std::numeric_limits<double>::infinity();
    while (true) {
        Matrix sh(code.nt, h.cols());
        for (int k = 0; k < g; ++k)
            for (size_t pos = 0; pos < groups[k].size(); ++pos)
                sh += per_group.points[idx[k]][pos] * wh[groups[k][pos]];
        const double metric = detail::residual_norm_sq(y, sh);
        ++out.metric_evaluations;
        if (metric < best_metric) {
            best_metric = metric;
            best = idx;
        }
        int k = g - 1;
        while (k >= 0 && ++idx[k] == static_cast<int>(per_group.points.size())) idx[k--] = 0;
        if (k < 0) break;
    }
    out.group_indices = best;
    detail::scatter_symbols(groups, per_group, best, out.symbols);
    return out;
}

struct SimConfig {
    std::vector<double> snr_points_db;
    int trials_per_point = 1000;
    int n_r = 1;
    uint64_t seed = 1;
    std::string decoder = "groupwise";  // groupwise | exhaustive | both
    int threads = 1;
};

struct SnrPointResult {
    double snr_db = 0.0;
    std::string decoder;
    long long trials = 0;
    long long bit_errors = 0;
    long long sym_errors = 0;
    double ber = 0.0;
    double ser = 0.0;
};

struct SimResult {
    SimConfig config;
    int bits_per_trial = 0;
    double bits_per_channel_use = 0.0;
    double avg_codeword_energy = 0.0;
    std::string bit_mapping = "gray-of-point-index";
    std::string snr_definition =
        "average received signal power per receive antenna over average noise power; "
        "noise variance set from the exact codeword-ensemble energy";
    std::vector<SnrPointResult> points;

    bool operator==(const SimResult& o) const {
        if (points.size() != o.points.size()) return false;
        for (size_t i = 0; i < points.size(); ++i) {
            const auto& a = points[i];
            const auto& b = o.points[i];
            if (a.snr_db != b.snr_db || a.decoder != b.decoder || a.trials != b.trials ||
                a.bit_errors != b.bit_errors || a.sym_errors != b.sym_errors)
                return false;
        }
        return true;
    }
};

namespace detail {

/// Exact E||S(X)||_F^2 for independent uniform per-group draws.
inline double mean_codeword_energy(const Code& code, const Partition& part,
                                   const Constellation& per_group) {
    const auto groups = part.groups();
    const int kw = code.K();
    // per-symbol means and per-group second moments
    std::vector<double> mean(kw, 0.0);
    const double inv_m = 1.0 / static_cast<double>(per_group.points.size());
    for (const auto& members : groups)
        for (size_t pos = 0; pos < members.size(); ++pos) {
            double s = 0.0;
            for (const auto& p : per_group.points) s += p[pos];
            mean[members[pos]] = s * inv_m;
        }
    double energy = 0.0;
    for (size_t gk = 0; gk < groups.size(); ++gk)
        for (size_t pa = 0; pa < groups[gk].size(); ++pa)
            for (size_t pb = 0; pb < groups[gk].size(); ++pb) {
                double second = 0.0;
                for (const auto& p : per_group.points) second += p[pa] * p[pb];
                second *= inv_m;
                energy += second *
                          trace(adjoint(code.weights[groups[gk][pa]]) * code.weights[groups[gk][pb]]).real();
            }
    for (size_t ga = 0; ga < groups.size(); ++ga)
        for (size_t gb = 0; gb < groups.size(); ++gb) {
            if (ga == gb) continue;
            for (int ia : groups[ga])
                for (int ib : groups[gb])
                    energy += mean[ia] * mean[ib] *
                              trace(adjoint(code.weights[ia]) * code.weights[ib]).real();
        }
    return energy;
}

struct TrialCounts {
    long long bit_errors = 0;
    long long sym_errors = 0;
};

}  // namespace detail

/// Quasi-static Rayleigh Monte Carlo sweep. Each (snr point, trial) pair
/// derives its own random stream from the seed, so results are bit-identical
/// for any thread count. Per trial: fresh H with CN(0,1) entries, uniform
/// symbols, Y = S(X)H + N, decode, count Gray-mapped bit errors and
/// symbol-vector errors.
inline SimResult run_simulation(const Code& code, const Partition& part,
                                const Constellation& per_group, const SimConfig& cfg) {
    per_group.validate();
    if (cfg.snr_points_db.empty()) throw std::invalid_argument("run_simulation: empty SNR list");
    if (cfg.trials_per_point < 1) throw std::invalid_argument("run_simulation: trials must be >= 1");
    if (cfg.n_r < 1) throw std::invalid_argument("run_simulation: n_r must be >= 1");
    if (cfg.threads < 1) throw std::invalid_argument("run_simulation: threads must be >= 1");
    if (cfg.decoder != "groupwise" && cfg.decoder != "exhaustive" && cfg.decoder != "both")
        throw std::invalid_argument("run_simulation: unknown decoder '" + cfg.decoder + "'");
    const size_t m = per_group.points.size();
    if ((m & (m - 1)) != 0)
        throw std::invalid_argument("run_simulation: per-group constellation size must be a power of 2");

    const auto groups = part.groups();
    const int g = static_cast<int>(groups.size());
    const int bits_per_group = std::bit_width(m) - 1;
    const bool run_group = cfg.decoder == "groupwise" || cfg.decoder == "both";
    const bool run_exh = cfg.decoder == "exhaustive" || cfg.decoder == "both";

    SimResult result;
    result.config = cfg;
    result.bits_per_trial = bits_per_group * g;
    result.bits_per_channel_use = static_cast<double>(result.bits_per_trial) / code.nt;
    result.avg_codeword_energy = detail::mean_codeword_energy(code, part, per_group);
    if (!(result.avg_codeword_energy > 0.0))
        throw std::invalid_argument("run_simulation: non-positive signal energy, SNR scaling undefined");

    auto gray = [](int v) { return v ^ (v >> 1); };

    for (size_t pt = 0; pt < cfg.snr_points_db.size(); ++pt) {
        const double rho = std::pow(10.0, cfg.snr_points_db[pt] / 10.0);
        const double sigma2 = result.avg_codeword_energy / (code.nt * rho);
        const double noise_scale = std::sqrt(sigma2 / 2.0);

        detail::TrialCounts counts_group, counts_exh;
        auto worker = [&](int t_begin, int t_end, detail::TrialCounts& cg, detail::TrialCounts& ce) {
            std::vector<double> x(code.K(), 0.0);
            for (int t = t_begin; t < t_end; ++t) {
                Rng rng(cfg.seed, pt, static_cast<uint64_t>(t));
                Matrix h(code.nt, cfg.n_r);
                for (int r = 0; r < code.nt; ++r)
                    for (int c = 0; c < cfg.n_r; ++c) {
                        double g0, g1;
                        rng.next_gaussian_pair(g0, g1);
                        h(r, c) = cplx(g0, g1) * std::sqrt(0.5);
                    }
                std::vector<int> tx(g);
                for (int k = 0; k < g; ++k) tx[k] = static_cast<int>(rng.next_below(m));
                detail::scatter_symbols(groups, per_group, tx, x);
                Matrix y = codeword(code, x) * h;
                for (int r = 0; r < code.nt; ++r)
                    for (int c = 0; c < cfg.n_r; ++c) {
                        double g0, g1;
                        rng.next_gaussian_pair(g0, g1);
                        y(r, c) += cplx(g0, g1) * noise_scale;
                    }
                auto count = [&](const DecodeResult& dec, detail::TrialCounts& tc) {
                    bool sym_err = false;
                    for (int k = 0; k < g; ++k) {
                        tc.bit_errors += std::popcount(
                            static_cast<unsigned>(gray(tx[k]) ^ gray(dec.group_indices[k])));
                        sym_err = sym_err || dec.group_indices[k] != tx[k];
                    }
                    if (sym_err) ++tc.sym_errors;
                };
                if (run_group) count(groupwise_ml_decode(code, part, per_group, y, h), cg);
                if (run_exh) count(exhaustive_ml_decode(code, part, per_group, y, h), ce);
            }
        };

        if (cfg.threads == 1) {
            worker(0, cfg.trials_per_point, counts_group, counts_exh);
        } else {
            std::vector<detail::TrialCounts> part_group(cfg.threads), part_exh(cfg.threads);
            std::vector<std::thread> pool;
            const int chunk = (cfg.trials_per_point + cfg.threads - 1) / cfg.threads;
            for (int w = 0; w < cfg.threads; ++w) {
                const int lo = w * chunk;
                const int hi = std::min(cfg.trials_per_point, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(worker, lo, hi, std::ref(part_group[w]), std::ref(part_exh[w]));
            }
            for (auto& th : pool) th.join();
            for (int w = 0; w < cfg.threads; ++w) {
                counts_group.bit_errors += part_group[w].bit_errors;
                counts_group.sym_errors += part_group[w].sym_errors;
                counts_exh.bit_errors += part_exh[w].bit_errors;
                counts_exh.sym_errors += part_exh[w].sym_errors;
            }
        }

        auto emit = [&](const std::string& name, const detail::TrialCounts& tc) {
            SnrPointResult r;
            r.snr_db = cfg.snr_points_db[pt];
            r.decoder = name;
            r.trials = cfg.trials_per_point;
            r.bit_errors = tc.bit_errors;
            r.sym_errors = tc.sym_errors;
            r.ber = static_cast<double>(tc.bit_errors) /
                    (static_cast<double>(result.bits_per_trial) * cfg.trials_per_point);
            r.ser = static_cast<double>(tc.sym_errors) / cfg.trials_per_point;
            result.points.push_back(r);
        };
        if (run_group) emit("groupwise", counts_group);
        if (run_exh) emit("exhaustive", counts_exh);
    }
    return result;
}

inline SimResult run_simulation(const Code& code, const Constellation& per_group,
                                const SimConfig& cfg) {
    return run_simulation(code, code.grouping, per_group, cfg);
}

}  // namespace stbc

#endif  // STBC_SIM_HPP
