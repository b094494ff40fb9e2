#ifndef STBC_DIVERSITY_HPP
#define STBC_DIVERSITY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "stbc/code.hpp"
#include "stbc/decode.hpp"
#include "stbc/matrix.hpp"
#include "stbc/rng.hpp"

namespace stbc {

/// Finite set of real n-vectors used as a per-group signal set.
struct Constellation {
    int dim = 0;
    std::vector<std::vector<double>> points;

    double avg_energy() const {
        double s = 0.0;
        for (const auto& p : points)
            for (double v : p) s += v * v;
        return s / static_cast<double>(points.size());
    }

    void validate() const {
        if (dim < 1) throw std::invalid_argument("Constellation: dim must be positive");
        if (points.size() < 2) throw std::invalid_argument("Constellation: need at least 2 points");
        for (const auto& p : points) {
            if (static_cast<int>(p.size()) != dim)
                throw std::invalid_argument("Constellation: point dimension mismatch");
            for (double v : p)
                if (!std::isfinite(v)) throw std::invalid_argument("Constellation: non-finite point");
        }
    }
};

namespace detail {

inline std::vector<std::vector<double>> invert_real(const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<double>> a = m;
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12) throw std::invalid_argument("invert_real: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (int c = 0; c < n; ++c) { a[col][c] /= d; inv[col][c] /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0) continue;
            const double f = a[r][col];
            for (int c = 0; c < n; ++c) { a[r][c] -= f * a[col][c]; inv[r][c] -= f * inv[col][c]; }
        }
    }
    return inv;
}

inline std::vector<double> apply_real(const std::vector<std::vector<double>>& m,
                                      const std::vector<double>& x) {
    std::vector<double> y(m.size(), 0.0);
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
    return y;
}

}  // namespace detail

/// Linear symbol transform y = T x with T = (1/c) [b_1 ... b_n] (sign
/// vectors as columns), as dictated by the simultaneous diagonalization of
/// the inner family. c matches the average energies of the two domains.
struct SymbolTransform {
    std::vector<std::vector<int>> b_vectors;
    double c = 1.0;
    std::vector<std::vector<double>> t;      // y = t * x
    std::vector<std::vector<double>> t_inv;  // x = t_inv * y

    std::vector<double> apply(const std::vector<double>& x) const { return detail::apply_real(t, x); }
    std::vector<double> apply_inverse(const std::vector<double>& y) const { return detail::apply_real(t_inv, y); }
};

namespace detail {

inline std::vector<std::vector<double>> b_columns_matrix(const std::vector<std::vector<int>>& b) {
    const int n = static_cast<int>(b.size());
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(b[i].size()) != n)
            throw std::invalid_argument("SymbolTransform: sign vectors must be square");
        for (int l = 0; l < n; ++l) m[l][i] = static_cast<double>(b[i][l]);
    }
    return m;
}

inline SymbolTransform finish_transform(const std::vector<std::vector<int>>& b, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("SymbolTransform: invalid energy constant");
    SymbolTransform tr;
    tr.b_vectors = b;
    tr.c = c;
    const auto m = b_columns_matrix(b);
    const int n = static_cast<int>(b.size());
    tr.t.assign(n, std::vector<double>(n, 0.0));
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) tr.t[r][col] = m[r][col] / c;
    const auto minv = invert_real(m);
    tr.t_inv.assign(n, std::vector<double>(n, 0.0));
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) tr.t_inv[r][col] = minv[r][col] * c;
    return tr;
}

}  // namespace detail

/// Build the transform scaled so that T(source) has the same average energy
/// as source (the source lives in the untransformed symbol domain).
inline SymbolTransform make_transform(const std::vector<std::vector<int>>& b_vectors,
                                      const Constellation& source) {
    source.validate();
    if (static_cast<int>(b_vectors.size()) != source.dim)
        throw std::invalid_argument("make_transform: dimension mismatch");
    if (!detail::b_vectors_independent(b_vectors))
        throw std::invalid_argument("make_transform: sign vectors are linearly dependent");
    const auto m = detail::b_columns_matrix(b_vectors);
    double num = 0.0, den = 0.0;
    for (const auto& p : source.points) {
        const auto mp = detail::apply_real(m, p);
        for (double v : mp) num += v * v;
        for (double v : p) den += v * v;
    }
    if (den <= 0.0) throw std::invalid_argument("make_transform: source constellation has zero energy");
    return detail::finish_transform(b_vectors, std::sqrt(num / den));
}

/// Same transform, scaled from the transformed-domain side: T^-1(target)
/// gets the same average energy as target.
inline SymbolTransform make_transform_for_target(const std::vector<std::vector<int>>& b_vectors,
                                                 const Constellation& target) {
    target.validate();
    if (static_cast<int>(b_vectors.size()) != target.dim)
        throw std::invalid_argument("make_transform_for_target: dimension mismatch");
    if (!detail::b_vectors_independent(b_vectors))
        throw std::invalid_argument("make_transform_for_target: sign vectors are linearly dependent");
    const auto m = detail::b_columns_matrix(b_vectors);
    const auto minv = detail::invert_real(m);
    double num = 0.0, den = 0.0;
    for (const auto& p : target.points) {
        const auto mp = detail::apply_real(minv, p);
        for (double v : mp) den += v * v;
        for (double v : p) num += v * v;
    }
    if (den <= 0.0) throw std::invalid_argument("make_transform_for_target: degenerate constellation");
    return detail::finish_transform(b_vectors, std::sqrt(num / den));
}

inline Constellation transform_constellation(const SymbolTransform& tr, const Constellation& src,
                                             bool inverse) {
    Constellation out;
    out.dim = src.dim;
    for (const auto& p : src.points) out.points.push_back(inverse ? tr.apply_inverse(p) : tr.apply(p));
    return out;
}

/// Coordinate product distance: min over distinct point pairs of
/// |prod_i (y_i - y'_i)|. Zero whenever two points share a coordinate.
inline double coordinate_product_distance(const Constellation& c) {
    c.validate();
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < c.points.size(); ++i)
        for (size_t k = i + 1; k < c.points.size(); ++k) {
            double prod = 1.0;
            for (int l = 0; l < c.dim; ++l) prod *= c.points[i][l] - c.points[k][l];
            best = std::min(best, std::abs(prod));
        }
    return best;
}

struct MinDetResult {
    double min_det = 0.0;               // overall minimum (single-group and sampled)
    double single_group_min = 0.0;      // exhaustive over one active group
    double multi_group_sampled_min = 0.0;
    long long evaluations = 0;
};

/// Brute-force scan of det(S^H(dX) S(dX)). All difference vectors with
/// exactly one active group are enumerated exhaustively; differences with
/// two or more active groups are sampled (the reduction to one active group
/// is the claim under test, sampling tries to falsify it).
inline MinDetResult min_det_scan(const Code& code, const Constellation& per_group,
                                 int multi_samples = 10000, uint64_t seed = 2024) {
    per_group.validate();
    if (per_group.dim != code.n)
        throw std::invalid_argument("min_det_scan: constellation dim must equal the group size");
    const int g = code.grouping.group_count;
    const auto groups = code.grouping.groups();
    const long long npts = static_cast<long long>(per_group.points.size());
    const long long budget = npts * npts * g + multi_samples;
    if (budget > 10000000LL) throw std::invalid_argument("min_det_scan: enumeration budget exceeded");

    MinDetResult res;
    res.single_group_min = std::numeric_limits<double>::infinity();
    res.multi_group_sampled_min = std::numeric_limits<double>::infinity();

    auto det_of_delta = [&](const std::vector<double>& dx) {
        const Matrix s = codeword(code, dx);
        const cplx d = det(adjoint(s) * s);
        if (std::abs(d.imag()) > 1e-9 * std::max(1.0, std::abs(d.real())))
            throw std::runtime_error("min_det_scan: determinant has a significant imaginary part");
        ++res.evaluations;
        return d.real();
    };

    for (int k = 0; k < g; ++k) {
        for (size_t i = 0; i < per_group.points.size(); ++i)
            for (size_t l = 0; l < per_group.points.size(); ++l) {
                if (i == l) continue;
                std::vector<double> dx(code.K(), 0.0);
                for (size_t pos = 0; pos < groups[k].size(); ++pos)
                    dx[groups[k][pos]] = per_group.points[i][pos] - per_group.points[l][pos];
                res.single_group_min = std::min(res.single_group_min, det_of_delta(dx));
            }
    }

    Rng rng(seed, 0xdeb7ULL, 0);
    for (int s = 0; s < multi_samples; ++s) {
        std::vector<size_t> pa(g), pb(g);
        int active = 0;
        for (int k = 0; k < g; ++k) {
            pa[k] = rng.next_below(npts);
            pb[k] = rng.next_below(npts);
            if (pa[k] != pb[k]) ++active;
        }
        for (int k = 0; k < g && active < 2; ++k) {
            if (pa[k] != pb[k]) continue;
            pb[k] = (pa[k] + 1 + rng.next_below(npts - 1)) % npts;
            ++active;
        }
        std::vector<double> dx(code.K(), 0.0);
        for (int k = 0; k < g; ++k)
            for (size_t pos = 0; pos < groups[k].size(); ++pos)
                dx[groups[k][pos]] =
                    per_group.points[pa[k]][pos] - per_group.points[pb[k]][pos];
        res.multi_group_sampled_min = std::min(res.multi_group_sampled_min, det_of_delta(dx));
    }

    res.min_det = std::min(res.single_group_min, res.multi_group_sampled_min);
    return res;
}

/// Closed-form diversity product (c / (2 sqrt(nt))) * CPD^(1/n) for codes
/// whose inner family is simultaneously diagonalized (transformed-domain
/// constellation a_y).
inline double diversity_product(const Code& code, const SymbolTransform& tr,
                                const Constellation& a_y) {
    if (!code.meta.diagonal_form)
        throw std::invalid_argument("diversity_product: code has no diagonalized inner family");
    if (a_y.dim != code.n) throw std::invalid_argument("diversity_product: dimension mismatch");
    const double cpd = coordinate_product_distance(a_y);
    return tr.c / (2.0 * std::sqrt(static_cast<double>(code.nt))) *
           std::pow(cpd, 1.0 / static_cast<double>(code.n));
}

/// Diversity product implied by a scanned minimum determinant.
inline double diversity_product_from_min_det(const Code& code, double min_det) {
    return std::pow(std::max(min_det, 0.0), 1.0 / (2.0 * code.nt)) /
           (2.0 * std::sqrt(static_cast<double>(code.nt)));
}

namespace detail {

inline std::vector<std::vector<double>> centered_grid(int dim, int size) {
    // levels per axis: smallest s with s^dim >= size, odd-integer PAM levels
    int s = 1;
    long long total = 1;
    while (total < size) {
        ++s;
        total = 1;
        for (int d = 0; d < dim; ++d) total *= s;
    }
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(dim, 0);
    while (true) {
        std::vector<double> p(dim);
        for (int d = 0; d < dim; ++d) p[d] = 2.0 * idx[d] - (s - 1);
        pts.push_back(p);
        int d = dim - 1;
        while (d >= 0 && ++idx[d] == s) idx[d--] = 0;
        if (d < 0) break;
    }
    // keep `size` points, lowest energy first, lexicographic within ties
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        double ea = 0.0, eb = 0.0;
        for (double v : a) ea += v * v;
        for (double v : b) eb += v * v;
        if (ea != eb) return ea < eb;
        return a < b;
    });
    pts.resize(size);
    return pts;
}

inline std::vector<std::vector<double>> dct_iv_matrix(int n) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    const double s = std::sqrt(2.0 / n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m[i][k] = s * std::cos(M_PI * (2 * i + 1) * (2 * k + 1) / (4.0 * n));
    return m;
}

/// Cyclotomic rotation for Z^n when 2n+1 is prime: orthogonal with rows
/// built from sin(2 pi i k / (2n+1)); every nonzero integer vector maps to a
/// vector with all coordinates nonzero.
inline std::vector<std::vector<double>> sin_cyclotomic_matrix(int n) {
    const int q = 2 * n + 1;
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    const double s = 2.0 / std::sqrt(static_cast<double>(q));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m[i][k] = s * std::sin(2.0 * M_PI * (i + 1) * (k + 1) / q);
    return m;
}

inline bool is_prime(int v) {
    if (v < 2) return false;
    for (int d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline std::vector<std::vector<double>> lattice_rotation_matrix(int n) {
    if (is_prime(2 * n + 1)) return sin_cyclotomic_matrix(n);
    return dct_iv_matrix(n);
}

}  // namespace detail

/// Small library of shipped signal sets. Rotations are fixed members of
/// known algebraic families; their CPD is checked exhaustively in tests, no
/// optimality is claimed.
inline Constellation named_constellation(const std::string& name, int size, int dim = 0) {
    if (size < 2) throw std::invalid_argument("named_constellation: size must be >= 2");
    Constellation c;
    if (name == "rotated-square-2d") {
        c.dim = 2;
        const double theta = 0.5 * std::atan(2.0);
        const double ct = std::cos(theta), st = std::sin(theta);
        for (const auto& p : detail::centered_grid(2, size))
            c.points.push_back({ct * p[0] - st * p[1], st * p[0] + ct * p[1]});
    } else if (name == "rotated-zn-lattice-nd") {
        if (dim < 2) throw std::invalid_argument("named_constellation: rotated-zn-lattice-nd needs dim >= 2");
        c.dim = dim;
        const auto rot = detail::lattice_rotation_matrix(dim);
        for (const auto& p : detail::centered_grid(dim, size))
            c.points.push_back(detail::apply_real(rot, p));
    } else if (name == "qam-as-pairs") {
        c.dim = 2;
        c.points = detail::centered_grid(2, size);
    } else {
        throw std::invalid_argument("named_constellation: unknown name '" + name + "'");
    }
    c.validate();
    return c;
}

/// Axis-aligned grid in any dimension (useful as a zero-CPD control).
inline Constellation grid_constellation(int dim, int size) {
    Constellation c;
    c.dim = dim;
    c.points = detail::centered_grid(dim, size);
    c.validate();
    return c;
}

}  // namespace stbc

#endif  // STBC_DIVERSITY_HPP
