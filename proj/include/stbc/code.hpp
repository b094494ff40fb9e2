#ifndef STBC_CODE_HPP
#define STBC_CODE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "stbc/clifford.hpp"
#include "stbc/matrix.hpp"

namespace stbc {

/// Assignment of weight-matrix indices to decoding groups (0-based labels).
struct Partition {
    std::vector<int> assignment;  // weight index -> group label
    int group_count = 0;

    std::vector<std::vector<int>> groups() const {
        std::vector<std::vector<int>> out(group_count);
        for (size_t i = 0; i < assignment.size(); ++i)
            out[assignment[i]].push_back(static_cast<int>(i));
        return out;
    }
};

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational reduced(long long n, long long d) {
        const long long g = std::gcd(n, d);
        return {n / g, d / g};
    }
    bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// A commuting Hermitian unitary family together with its simultaneous
/// eigenstructure: member i = u * Diag(b_vectors[i]) * u^H.
struct CommutingFamily {
    std::vector<Matrix> members;
    std::vector<std::vector<int>> b_vectors;  // entries in {+1,-1}
    Matrix u;
};

struct CodeMeta {
    std::string kind = "custom";        // general | ssd | dsd | custom
    std::string inner_form = "custom";  // diagonalized | clifford-product | custom
    std::string u_choice = "custom";    // identity | hadamard | dft | custom
    bool diagonal_form = false;         // b_vectors/u describe the inner family
    std::vector<std::vector<int>> b_vectors;
    Matrix u;
    std::string generator_order = "v1";
};

/// A constructed linear dispersion code: K = g*n unitary weight matrices of
/// size nt x nt assembled as outer (x) inner Kronecker products, plus the
/// decoding-group partition.
struct Code {
    int nt = 0;
    int m = 0;
    int n = 0;
    int g = 0;
    std::vector<Matrix> weights;
    Partition grouping;
    CodeMeta meta;

    int K() const { return static_cast<int>(weights.size()); }
    Rational rate_real() const { return Rational::reduced(K(), nt); }
    Rational rate_complex() const { return Rational::reduced(K(), 2LL * nt); }
};

inline double hurwitz_radon_residual(const Matrix& a, const Matrix& b) {
    if (!a.square() || !b.square()) throw std::invalid_argument("hurwitz_radon_residual: square inputs required");
    check_same_shape(a, b, "hurwitz_radon_residual");
    return frobenius_norm(adjoint(a) * b + adjoint(b) * a);
}

/// g unitary matrices of minimal size m = 2^floor((g-1)/2) satisfying
/// A^H B + B^H A = 0 pairwise: the identity plus g-1 anticommuting
/// anti-Hermitian generators.
inline std::vector<Matrix> hurwitz_radon_family(int g) {
    if (g < 2 || g > 12) throw std::invalid_argument("hurwitz_radon_family: g must be in [2,12]");
    if (g == 2) return {Matrix{{1.0}}, Matrix{{cplx(0.0, 1.0)}}};
    const int a = (g - 1) / 2;
    const GammaSet gs = clifford_generators(a);
    std::vector<Matrix> fam;
    fam.reserve(g);
    fam.push_back(identity(gs.dim()));
    for (int k = 0; k < g - 1; ++k) fam.push_back(gs.gammas[k]);
    return fam;
}

inline std::vector<std::vector<int>> default_b_vectors(int n) {
    if (n < 1) throw std::invalid_argument("default_b_vectors: n must be positive");
    std::vector<std::vector<int>> b;
    b.emplace_back(n, 1);
    if (n >= 2) {
        std::vector<int> v(n, 1);
        v[n - 1] = -1;  // flip last coordinate
        b.push_back(v);
    }
    for (int i = 2; i < n; ++i) {
        std::vector<int> v(n, 1);
        v[i - 2] = -1;
        b.push_back(v);
    }
    return b;
}

/// Normalized +-1 Hadamard matrix; n must be a power of two.
inline Matrix hadamard_matrix(int n) {
    if (n < 1 || (n & (n - 1)) != 0) throw std::invalid_argument("hadamard_matrix: n must be a power of 2");
    Matrix h{{1.0}};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix h2{{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
    while (h.rows() < n) h = kron(h2, h);
    return h;
}

/// Unitary DFT matrix of size n.
inline Matrix dft_matrix(int n) {
    if (n < 1) throw std::invalid_argument("dft_matrix: n must be positive");
    Matrix u(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const double phi = -2.0 * M_PI * p * q / n;
            u(p, q) = s * cplx(std::cos(phi), std::sin(phi));
        }
    return u;
}

/// Default eigenbasis choice: dense Hadamard when n is a power of two,
/// unitary DFT otherwise (diagonal members have many zeros, which hurts PAPR).
inline Matrix default_u_matrix(int n) {
    if (n >= 1 && (n & (n - 1)) == 0) return hadamard_matrix(n);
    return dft_matrix(n);
}

namespace detail {

inline bool b_vectors_independent(const std::vector<std::vector<int>>& b) {
    const int n = static_cast<int>(b.size());
    Matrix bm(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(b[i].size()) != n) return false;
        for (int l = 0; l < n; ++l) bm(i, l) = static_cast<double>(b[i][l]);
    }
    return std::abs(det(bm)) > 0.5;  // integer determinant, nonzero means >= 1
}

}  // namespace detail

/// n commuting Hermitian unitary matrices u * Diag(b_i) * u^H from n linearly
/// independent +-1 sign vectors.
inline CommutingFamily commuting_family_diagonal(int n, const Matrix& u,
                                                 std::vector<std::vector<int>> b = {}) {
    if (n < 1) throw std::invalid_argument("commuting_family_diagonal: n must be positive");
    if (u.rows() != n || u.cols() != n || !is_unitary(u, 1e-10))
        throw std::invalid_argument("commuting_family_diagonal: u must be unitary n x n");
    if (b.empty()) b = default_b_vectors(n);
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("commuting_family_diagonal: need n sign vectors");
    for (const auto& v : b)
        for (int s : v)
            if (s != 1 && s != -1) throw std::invalid_argument("commuting_family_diagonal: sign vectors must be +-1");
    if (!detail::b_vectors_independent(b))
        throw std::invalid_argument("commuting_family_diagonal: sign vectors are linearly dependent");

    CommutingFamily fam;
    fam.u = u;
    fam.b_vectors = b;
    const Matrix uh = adjoint(u);
    for (const auto& v : b) {
        std::vector<double> d(v.begin(), v.end());
        fam.members.push_back(u * diag_real(d) * uh);
    }
    return fam;
}

inline CommutingFamily commuting_family_diagonal(int n) {
    return commuting_family_diagonal(n, identity(n));
}

namespace detail {

/// 2a anticommuting anti-Hermitian unitaries on 2^a dims whose index-sorted
/// pair products generate the commuting family below. Base cases are pinned;
/// higher levels extend them the same way clifford_generators does.
inline std::vector<Matrix> commuting_pair_generators(int a) {
    const PauliBasis p = pauli_basis();
    const cplx j(0.0, 1.0);
    if (a == 1) return {p.s1, j * p.s3};
    if (a == 2)
        return {kron(j * p.s3, p.s3), kron(p.s1, p.s3), kron(cplx(0.0, -1.0) * identity(2), p.s4),
                kron(identity(2), p.s1)};
    std::vector<Matrix> prev = commuting_pair_generators(a - 1);
    const Matrix eye = identity(1 << (a - 1));
    std::vector<Matrix> out(2 * a, Matrix{{0.0}});
    for (int k = 0; k < a - 1; ++k) {
        out[k] = kron(p.s3, prev[k]);
        out[a + k] = kron(p.s3, prev[(a - 1) + k]);
    }
    out[a - 1] = kron(p.s1, eye);
    out[2 * a - 1] = kron(p.s2, eye);
    return out;
}

}  // namespace detail

/// The 2^a element commuting Hermitian unitary family on 2^a dims obtained
/// from products of anticommuting generator pairs: for each subset
/// T of {1..a} the element is j^|T| times the index-sorted product of the
/// generators {k, a+k : k in T}. Subsets are ordered by (size, lexicographic).
inline CommutingFamily commuting_family_clifford(int a) {
    if (a < 1 || a > 5) throw std::invalid_argument("commuting_family_clifford: a must be in [1,5]");
    const std::vector<Matrix> gen = detail::commuting_pair_generators(a);
    const int n = gen.front().rows();
    const cplx j(0.0, 1.0);

    std::vector<std::vector<int>> subsets;
    for (uint32_t mask = 0; mask < (1u << a); ++mask) {
        std::vector<int> t;
        for (int k = 0; k < a; ++k)
            if (mask & (1u << k)) t.push_back(k);
        subsets.push_back(std::move(t));
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](const std::vector<int>& x, const std::vector<int>& y) {
                         if (x.size() != y.size()) return x.size() < y.size();
                         return x < y;
                     });

    CommutingFamily fam;
    for (const auto& t : subsets) {
        std::vector<int> idx;
        for (int k : t) idx.push_back(k);
        for (int k : t) idx.push_back(a + k);
        std::sort(idx.begin(), idx.end());
        Matrix el = identity(n);
        for (int i : idx) el = el * gen[i];
        cplx phase = 1.0;
        for (size_t i = 0; i < t.size(); ++i) phase *= j;
        fam.members.push_back(phase * el);
    }

    // Simultaneous eigenbasis: the level-2 block is diagonalized explicitly,
    // higher levels extend it through the identity factor of the recursion.
    Matrix u;
    if (a == 1) {
        u = hadamard_matrix(2);
    } else {
        const cplx i1(1.0, 0.0), ij(0.0, 1.0);
        const double half = 0.5;
        u = Matrix{{half * i1, half * i1, half * i1, half * i1},
                   {half * -ij, half * -ij, half * ij, half * ij},
                   {half * -i1, half * i1, half * i1, half * -i1},
                   {half * -ij, half * ij, half * -ij, half * ij}};
        for (int lvl = 3; lvl <= a; ++lvl) u = kron(identity(2), u);
    }
    fam.u = u;
    const Matrix uh = adjoint(u);
    for (const Matrix& mmat : fam.members) {
        const Matrix d = uh * mmat * u;
        std::vector<int> b(n);
        for (int l = 0; l < n; ++l) {
            const double v = d(l, l).real();
            b[l] = v >= 0.0 ? 1 : -1;
            if (std::abs(std::abs(v) - 1.0) > 1e-9)
                throw std::runtime_error("commuting_family_clifford: eigenbasis mismatch");
        }
        const Matrix rebuilt = u * diag_real(std::vector<double>(b.begin(), b.end())) * uh;
        if (!approx_equal(rebuilt, mmat, 1e-10))
            throw std::runtime_error("commuting_family_clifford: eigenbasis mismatch");
        fam.b_vectors.push_back(std::move(b));
    }
    return fam;
}

/// Kronecker assembly: weight (k,i) = outer[k] (x) inner[i], group k.
/// Preconditions (pairwise Hurwitz-Radon outer family, commuting Hermitian
/// inner family) are checked and reported with the offending pair.
inline Code assemble_code(const std::vector<Matrix>& outer, const std::vector<Matrix>& inner,
                          CodeMeta meta = {}) {
    if (outer.empty() || inner.empty()) throw std::invalid_argument("assemble_code: empty family");
    const int m = outer.front().rows();
    const int n = inner.front().rows();
    for (const Matrix& a : outer)
        if (!a.square() || a.rows() != m) throw std::invalid_argument("assemble_code: outer family shape mismatch");
    for (const Matrix& a : inner)
        if (!a.square() || a.rows() != n) throw std::invalid_argument("assemble_code: inner family shape mismatch");

    for (size_t i = 0; i < outer.size(); ++i)
        for (size_t k = i + 1; k < outer.size(); ++k)
            if (hurwitz_radon_residual(outer[i], outer[k]) > 1e-10)
                throw std::invalid_argument("assemble_code: outer pair (" + std::to_string(i) + "," +
                                            std::to_string(k) + ") violates A^H B + B^H A = 0");
    for (size_t i = 0; i < inner.size(); ++i) {
        if (!is_hermitian(inner[i], 1e-10))
            throw std::invalid_argument("assemble_code: inner member " + std::to_string(i) + " is not Hermitian");
        for (size_t k = i + 1; k < inner.size(); ++k)
            if (!commute(inner[i], inner[k], 1e-10))
                throw std::invalid_argument("assemble_code: inner pair (" + std::to_string(i) + "," +
                                            std::to_string(k) + ") does not commute");
    }

    Code code;
    code.m = m;
    code.n = n;
    code.g = static_cast<int>(outer.size());
    code.nt = m * n;
    code.meta = std::move(meta);
    code.grouping.group_count = code.g;
    for (int k = 0; k < code.g; ++k)
        for (int i = 0; i < n; ++i) {
            code.weights.push_back(kron(outer[k], inner[i]));
            code.grouping.assignment.push_back(k);
        }
    return code;
}

inline Code assemble_code(const std::vector<Matrix>& outer, const CommutingFamily& inner,
                          CodeMeta meta = {}) {
    meta.diagonal_form = true;
    meta.b_vectors = inner.b_vectors;
    meta.u = inner.u;
    return assemble_code(outer, inner.members, std::move(meta));
}

inline int min_outer_dim(int g) { return 1 << ((g - 1) / 2); }

/// General construction for nt antennas and g decoding groups;
/// u_choice selects the inner eigenbasis: identity, hadamard, dft or default.
inline Code make_general_code(int nt, int g, const std::string& u_choice = "default") {
    const int m = min_outer_dim(g);
    if (nt % m != 0)
        throw std::invalid_argument("make_general_code: need m = " + std::to_string(m) +
                                    " to divide nt = " + std::to_string(nt) +
                                    " (m is the minimal outer size for g = " + std::to_string(g) + ")");
    const int n = nt / m;
    Matrix u;
    std::string chosen = u_choice;
    if (u_choice == "identity") {
        u = identity(n);
    } else if (u_choice == "hadamard") {
        u = hadamard_matrix(n);
    } else if (u_choice == "dft") {
        u = dft_matrix(n);
    } else if (u_choice == "default") {
        u = default_u_matrix(n);
        chosen = (n & (n - 1)) == 0 ? "hadamard" : "dft";
    } else {
        throw std::invalid_argument("make_general_code: unknown u choice '" + u_choice + "'");
    }
    CodeMeta meta;
    meta.kind = "general";
    meta.inner_form = "diagonalized";
    meta.u_choice = chosen;
    return assemble_code(hurwitz_radon_family(g), commuting_family_diagonal(n, u), std::move(meta));
}

/// Single-symbol decodable preset for nt = 2^a: 2a groups of two real
/// symbols, complex rate a / 2^(a-1).
inline Code single_symbol_code(int a) {
    if (a < 2) throw std::invalid_argument("single_symbol_code: a must be >= 2");
    if (a > 6) throw std::invalid_argument("single_symbol_code: a must be <= 6");
    CodeMeta meta;
    meta.kind = "ssd";
    meta.inner_form = "diagonalized";
    meta.u_choice = "hadamard";
    // the Hadamard-diagonalized pair, pinned in exact integers
    CommutingFamily inner;
    inner.members = {identity(2), pauli_basis().s4};
    inner.b_vectors = {{1, 1}, {1, -1}};
    inner.u = hadamard_matrix(2);
    return assemble_code(hurwitz_radon_family(2 * a), inner, std::move(meta));
}

/// Double-symbol decodable preset for nt = 2^a: 2a-2 groups of four real
/// symbols, complex rate (a-1) / 2^(a-2).
inline Code double_symbol_code(int a) {
    if (a < 2) throw std::invalid_argument("double_symbol_code: a must be >= 2");
    if (a > 7) throw std::invalid_argument("double_symbol_code: a must be <= 7");
    CodeMeta meta;
    meta.kind = "dsd";
    meta.inner_form = "clifford-product";
    meta.u_choice = "custom";
    return assemble_code(hurwitz_radon_family(2 * a - 2), commuting_family_clifford(2), std::move(meta));
}

}  // namespace stbc

#endif  // STBC_CODE_HPP
