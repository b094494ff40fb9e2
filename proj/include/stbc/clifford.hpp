#ifndef STBC_CLIFFORD_HPP
#define STBC_CLIFFORD_HPP

#include <string>
#include <vector>

#include "stbc/matrix.hpp"

namespace stbc {

struct PauliBasis {
    Matrix s1;  // [[0,1],[-1,0]]
    Matrix s2;  // [[0,j],[j,0]]
    Matrix s3;  // [[1,0],[0,-1]]
    Matrix s4;  // -j*s2 = [[0,1],[1,0]]
};

inline PauliBasis pauli_basis() {
    const cplx j(0.0, 1.0);
    PauliBasis p;
    p.s1 = Matrix{{0.0, 1.0}, {-1.0, 0.0}};
    p.s2 = Matrix{{0.0, j}, {j, 0.0}};
    p.s3 = Matrix{{1.0, 0.0}, {0.0, -1.0}};
    p.s4 = Matrix{{0.0, 1.0}, {1.0, 0.0}};
    return p;
}

/// A family of 2a+1 anticommuting generators represented on 2^a x 2^a
/// matrices, each unitary, anti-Hermitian and squaring to -I.
struct GammaSet {
    int a = 0;
    std::vector<Matrix> gammas;
    int dim() const { return 1 << a; }
};

/// Generators for level `a`, built recursively: the base level is
/// {s1, s2, j*s3}; one level up maps {B_k} to {s3 (x) B_k, s1 (x) I, s2 (x) I}.
/// The ordering is fixed; serialized codes depend on it.
inline GammaSet clifford_generators(int a) {
    if (a < 1 || a > 6) throw std::invalid_argument("clifford_generators: a must be in [1,6]");
    const PauliBasis p = pauli_basis();
    const cplx j(0.0, 1.0);

    GammaSet gs;
    gs.a = 1;
    gs.gammas = {p.s1, p.s2, j * p.s3};
    while (gs.a < a) {
        const Matrix eye = identity(1 << gs.a);
        std::vector<Matrix> next;
        next.reserve(gs.gammas.size() + 2);
        for (const Matrix& b : gs.gammas) next.push_back(kron(p.s3, b));
        next.push_back(kron(p.s1, eye));
        next.push_back(kron(p.s2, eye));
        gs.gammas = std::move(next);
        ++gs.a;
    }
    return gs;
}

struct GammaReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks the defining relations of a generator family: anti-Hermiticity,
/// unitarity, squares equal to -I, and pairwise anticommutation.
/// Never throws; failures are listed in the report.
inline GammaReport verify_clifford_relations(const std::vector<Matrix>& gammas, double tol = 1e-10) {
    GammaReport rep;
    auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    if (gammas.empty()) {
        fail("empty generator list");
        return rep;
    }
    const int n = gammas.front().rows();
    for (size_t k = 0; k < gammas.size(); ++k) {
        const Matrix& g = gammas[k];
        if (!g.square() || g.rows() != n) {
            fail("generator " + std::to_string(k) + ": shape mismatch");
            return rep;
        }
        if (frobenius_norm(adjoint(g) + g) > tol)
            fail("generator " + std::to_string(k) + ": not anti-Hermitian");
        if (!is_unitary(g, tol))
            fail("generator " + std::to_string(k) + ": not unitary");
        if (frobenius_norm(g * g + identity(n)) > tol)
            fail("generator " + std::to_string(k) + ": square is not -I");
    }
    for (size_t k = 0; k < gammas.size(); ++k)
        for (size_t l = k + 1; l < gammas.size(); ++l) {
            const double r = frobenius_norm(gammas[k] * gammas[l] + gammas[l] * gammas[k]);
            if (r > tol)
                fail("pair (" + std::to_string(k) + "," + std::to_string(l) +
                     "): anticommutator norm " + std::to_string(r));
        }
    return rep;
}

inline GammaReport verify_clifford_relations(const GammaSet& gs, double tol = 1e-10) {
    GammaReport rep = verify_clifford_relations(gs.gammas, tol);
    if (static_cast<int>(gs.gammas.size()) != 2 * gs.a + 1) {
        rep.ok = false;
        rep.violations.push_back("expected " + std::to_string(2 * gs.a + 1) + " generators, got " +
                                 std::to_string(gs.gammas.size()));
    }
    return rep;
}

}  // namespace stbc

#endif  // STBC_CLIFFORD_HPP
