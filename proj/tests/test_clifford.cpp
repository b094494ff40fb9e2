#include <doctest.h>

#include "stbc/clifford.hpp"

using namespace stbc;

TEST_CASE("pauli basis pinned entries") {
    const PauliBasis p = pauli_basis();
    const cplx j(0.0, 1.0);
    CHECK(approx_equal(p.s1 * p.s1, cplx(-1.0, 0.0) * identity(2), 1e-15));
    CHECK(approx_equal(p.s4, Matrix{{0.0, 1.0}, {1.0, 0.0}}, 1e-15));
    CHECK(approx_equal(p.s4, cplx(0.0, -1.0) * p.s2, 1e-15));
    CHECK(frobenius_norm(p.s1 * p.s2 + p.s2 * p.s1) < 1e-15);
    CHECK(approx_equal(p.s3, Matrix{{1.0, 0.0}, {0.0, -1.0}}, 1e-15));
    (void)j;
}

TEST_CASE("base generators are s1, s2, j*s3") {
    const GammaSet gs = clifford_generators(1);
    const PauliBasis p = pauli_basis();
    REQUIRE(gs.gammas.size() == 3);
    CHECK(approx_equal(gs.gammas[0], p.s1, 1e-15));
    CHECK(approx_equal(gs.gammas[1], p.s2, 1e-15));
    CHECK(approx_equal(gs.gammas[2], cplx(0.0, 1.0) * p.s3, 1e-15));
}

TEST_CASE("generator counts, dimensions and relations for a = 1..5") {
    for (int a = 1; a <= 5; ++a) {
        const GammaSet gs = clifford_generators(a);
        CHECK(static_cast<int>(gs.gammas.size()) == 2 * a + 1);
        CHECK(gs.gammas.front().rows() == (1 << a));
        const GammaReport rep = verify_clifford_relations(gs);
        CHECK(rep.ok);
        if (!rep.ok)
            for (const auto& v : rep.violations) MESSAGE(v);
    }
    CHECK_THROWS_AS(clifford_generators(0), std::invalid_argument);
    CHECK_THROWS_AS(clifford_generators(7), std::invalid_argument);
}

TEST_CASE("distinct generator products are traceless, determinants unimodular") {
    const GammaSet gs = clifford_generators(3);
    for (size_t i = 0; i < gs.gammas.size(); ++i) {
        CHECK(std::abs(std::abs(det(gs.gammas[i])) - 1.0) < 1e-10);
        for (size_t k = 0; k < gs.gammas.size(); ++k) {
            if (i == k) continue;
            CHECK(std::abs(trace(gs.gammas[i] * gs.gammas[k])) < 1e-10);
        }
    }
}

TEST_CASE("relation verifier flags broken families") {
    const PauliBasis p = pauli_basis();
    const cplx j(0.0, 1.0);

    const GammaReport dup = verify_clifford_relations({p.s1, p.s1, j * p.s3});
    CHECK_FALSE(dup.ok);
    bool anticommute_flagged = false;
    for (const auto& v : dup.violations)
        if (v.find("anticommutator") != std::string::npos) anticommute_flagged = true;
    CHECK(anticommute_flagged);

    // s3 is Hermitian, not anti-Hermitian
    const GammaReport herm = verify_clifford_relations({p.s1, p.s2, p.s3});
    CHECK_FALSE(herm.ok);
    bool hermiticity_flagged = false;
    for (const auto& v : herm.violations)
        if (v.find("anti-Hermitian") != std::string::npos) hermiticity_flagged = true;
    CHECK(hermiticity_flagged);

    CHECK(verify_clifford_relations(clifford_generators(2)).ok);
}
