#ifndef STBC_DECODE_HPP
#define STBC_DECODE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "stbc/code.hpp"
#include "stbc/matrix.hpp"
#include "stbc/rng.hpp"

namespace stbc {

/// Threshold separating structural nonzeros (norm >= 1 for the unit-entry
/// matrices built here) from floating-point noise around true zeros.
inline constexpr double kPartitionEdgeTol = 1e-8;

/// S(x) = sum_i x_i * W_i.
inline Matrix codeword(const Code& code, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != code.K())
        throw std::invalid_argument("codeword: symbol vector length must equal K");
    Matrix s(code.nt, code.nt);
    for (int i = 0; i < code.K(); ++i) {
        if (x[i] == 0.0) continue;
        s += x[i] * code.weights[i];
    }
    return s;
}

/// S_k(x) restricted to one group; symbols outside the group are ignored.
inline Matrix group_codeword(const Code& code, const Partition& part, int group,
                             const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != code.K())
        throw std::invalid_argument("group_codeword: symbol vector length must equal K");
    Matrix s(code.nt, code.nt);
    for (int i = 0; i < code.K(); ++i) {
        if (part.assignment[i] != group || x[i] == 0.0) continue;
        s += x[i] * code.weights[i];
    }
    return s;
}

namespace detail {

inline Partition components_to_partition(std::vector<int> root, int count) {
    // Relabel so group labels ascend with the smallest contained weight index.
    std::map<int, int> relabel;
    for (int r : root)
        if (!relabel.count(r)) relabel.emplace(r, static_cast<int>(relabel.size()));
    Partition part;
    part.group_count = count;
    for (int r : root) part.assignment.push_back(relabel.at(r));
    return part;
}

}  // namespace detail

/// Finest partition under which the quadratic form S^H S separates: weights
/// i and j stay together iff ||W_i^H W_j + W_j^H W_i|| exceeds the edge
/// threshold somewhere along a path connecting them.
inline Partition discover_partition(const std::vector<Matrix>& weights,
                                    double edge_tol = kPartitionEdgeTol) {
    const int k = static_cast<int>(weights.size());
    if (k == 0) throw std::invalid_argument("discover_partition: empty weight list");
    for (const Matrix& w : weights) {
        if (!w.square() || w.rows() != weights.front().rows())
            throw std::invalid_argument("discover_partition: weights must share a square shape");
    }
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int i) {
        while (parent[i] != i) { parent[i] = parent[parent[i]]; i = parent[i]; }
        return i;
    };
    for (int i = 0; i < k; ++i)
        for (int l = i + 1; l < k; ++l)
            if (hurwitz_radon_residual(weights[i], weights[l]) > edge_tol) {
                const int ri = find(i), rl = find(l);
                if (ri != rl) parent[std::max(ri, rl)] = std::min(ri, rl);
            }
    int count = 0;
    std::vector<int> root(k);
    for (int i = 0; i < k; ++i) {
        root[i] = find(i);
        if (root[i] == i) ++count;
    }
    return detail::components_to_partition(std::move(root), count);
}

/// Re-splits each declared group independently with the same separation
/// condition; the result refines the input (it never merges groups).
inline Partition refine_partition(const std::vector<Matrix>& weights, const Partition& coarse,
                                  double edge_tol = kPartitionEdgeTol) {
    std::vector<int> fine_label(weights.size(), -1);
    int next = 0;
    std::vector<std::pair<int, int>> order;  // (smallest index, temp label) for relabeling
    std::vector<int> temp(weights.size(), -1);
    for (const std::vector<int>& members : coarse.groups()) {
        if (members.empty()) continue;
        std::vector<Matrix> sub;
        for (int i : members) sub.push_back(weights[i]);
        const Partition subpart = discover_partition(sub, edge_tol);
        for (size_t pos = 0; pos < members.size(); ++pos)
            temp[members[pos]] = next + subpart.assignment[pos];
        next += subpart.group_count;
    }
    // Relabel by smallest contained weight index, ascending.
    std::map<int, int> first_index;
    for (size_t i = 0; i < temp.size(); ++i)
        if (!first_index.count(temp[i])) first_index.emplace(temp[i], static_cast<int>(i));
    std::vector<std::pair<int, int>> by_first;  // (first index, temp label)
    for (const auto& [label, first] : first_index) by_first.emplace_back(first, label);
    std::sort(by_first.begin(), by_first.end());
    std::map<int, int> relabel;
    for (const auto& [first, label] : by_first) relabel.emplace(label, static_cast<int>(relabel.size()));
    Partition out;
    out.group_count = next;
    for (int t : temp) out.assignment.push_back(relabel.at(t));
    return out;
}

/// Max over seeded random symbol vectors of
/// || S^H(X) S(X) - sum_k S_k^H(X_k) S_k(X_k) ||_F.
inline double decomposition_residual(const Code& code, const Partition& part, int trials,
                                     uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("decomposition_residual: trials must be >= 1");
    Rng rng(seed, 0x5eedULL, 0);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> x(code.K());
        for (double& v : x) v = 2.0 * rng.next_double() - 1.0;
        const Matrix s = codeword(code, x);
        Matrix sum(code.nt, code.nt);
        for (int k = 0; k < part.group_count; ++k) {
            const Matrix sk = group_codeword(code, part, k, x);
            sum += adjoint(sk) * sk;
        }
        worst = std::max(worst, frobenius_norm(adjoint(s) * s - sum));
    }
    return worst;
}

inline double decomposition_residual(const Code& code, int trials, uint64_t seed) {
    return decomposition_residual(code, code.grouping, trials, seed);
}

/// Rank of the weight set over the reals, via the Gram matrix of vectorized
/// weights (inner product Re tr(W_i^H W_j)). Full rank K means the map
/// x -> S(x) is injective.
inline int weights_real_rank(const std::vector<Matrix>& weights, double tol = 1e-8) {
    const int k = static_cast<int>(weights.size());
    Matrix gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) gram(i, l) = trace(adjoint(weights[i]) * weights[l]).real();
    // Gaussian elimination with partial pivoting; count significant pivots.
    double scale = 0.0;
    for (int i = 0; i < k; ++i) scale = std::max(scale, std::abs(gram(i, i).real()));
    if (scale == 0.0) return 0;
    int rank = 0;
    std::vector<bool> used(k, false);
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        double best = tol * scale;
        for (int r = 0; r < k; ++r)
            if (!used[r] && std::abs(gram(r, col)) > best) { best = std::abs(gram(r, col)); piv = r; }
        if (piv < 0) continue;
        used[piv] = true;
        ++rank;
        for (int r = 0; r < k; ++r) {
            if (r == piv || std::abs(gram(r, col)) == 0.0) continue;
            const cplx f = gram(r, col) / gram(piv, col);
            for (int c = 0; c < k; ++c) gram(r, c) -= f * gram(piv, c);
        }
    }
    return rank;
}

struct VerifyReport {
    Partition discovered;
    Partition refined;
    double decomposition_residual = 0.0;
    int rank = 0;
    int expected_rank = 0;
    bool ok = false;
};

/// One-stop structural verification used by the CLI and the self test.
inline VerifyReport verify_code(const Code& code, int trials = 64, uint64_t seed = 1) {
    VerifyReport rep;
    rep.discovered = discover_partition(code.weights);
    rep.refined = refine_partition(code.weights, rep.discovered);
    rep.decomposition_residual = decomposition_residual(code, rep.discovered, trials, seed);
    rep.rank = weights_real_rank(code.weights);
    rep.expected_rank = code.K();
    rep.ok = rep.decomposition_residual <= 1e-9 * code.K() && rep.rank == rep.expected_rank;
    return rep;
}

}  // namespace stbc

#endif  // STBC_DECODE_HPP
