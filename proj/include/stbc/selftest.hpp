#ifndef STBC_SELFTEST_HPP
#define STBC_SELFTEST_HPP

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "stbc/clifford.hpp"
#include "stbc/code.hpp"
#include "stbc/decode.hpp"
#include "stbc/diversity.hpp"
#include "stbc/json_io.hpp"
#include "stbc/sim.hpp"

namespace stbc {

/// Condensed invariant suite bound to the CLI. Returns the number of failed
/// checks and prints one line per check.
inline int run_selftest(std::FILE* out = stdout) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::fprintf(out, "%s %s\n", ok ? "PASS" : "FAIL", name.c_str());
        if (!ok) ++failures;
    };
    auto guarded = [&](const std::string& name, const std::function<bool()>& fn) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::fprintf(out, "FAIL %s (exception: %s)\n", name.c_str(), e.what());
            ++failures;
            return;
        }
        check(name, ok);
    };

    for (int a = 1; a <= 4; ++a)
        guarded("clifford relations a=" + std::to_string(a),
                [a] { return verify_clifford_relations(clifford_generators(a)).ok; });

    guarded("general code nt=6 g=4", [] {
        const Code code = make_general_code(6, 4, "identity");
        const VerifyReport rep = verify_code(code);
        return rep.ok && rep.discovered.group_count == 4;
    });

    for (int a = 2; a <= 4; ++a) {
        guarded("ssd preset a=" + std::to_string(a), [a] {
            const Code code = single_symbol_code(a);
            const VerifyReport rep = verify_code(code);
            return rep.ok && rep.discovered.group_count == 2 * a &&
                   code.rate_complex() == Rational::reduced(a, 1 << (a - 1));
        });
        guarded("dsd preset a=" + std::to_string(a), [a] {
            const Code code = double_symbol_code(a);
            const VerifyReport rep = verify_code(code);
            return rep.ok && rep.discovered.group_count == 2 * a - 2 &&
                   code.rate_complex() == Rational::reduced(a - 1, 1 << (a - 2));
        });
    }

    guarded("decoder equivalence ssd a=2", [] {
        const Code code = single_symbol_code(2);
        const Constellation pg = grid_constellation(2, 4);
        Rng rng(17, 0, 0);
        for (int t = 0; t < 200; ++t) {
            Matrix h(code.nt, 1);
            for (int r = 0; r < code.nt; ++r) {
                double g0, g1;
                rng.next_gaussian_pair(g0, g1);
                h(r, 0) = cplx(g0, g1) * std::sqrt(0.5);
            }
            std::vector<double> x(code.K());
            for (double& v : x) v = rng.next_double() < 0.5 ? -1.0 : 1.0;
            Matrix y = codeword(code, x) * h;
            for (int r = 0; r < code.nt; ++r) {
                double g0, g1;
                rng.next_gaussian_pair(g0, g1);
                y(r, 0) += cplx(g0, g1) * 0.4;
            }
            const DecodeResult a = groupwise_ml_decode(code, code.grouping, pg, y, h);
            const DecodeResult b = exhaustive_ml_decode(code, code.grouping, pg, y, h);
            if (a.group_indices != b.group_indices) return false;
        }
        return true;
    });

    guarded("min-determinant consistency ssd a=2", [] {
        const Code code = single_symbol_code(2);
        const Constellation ay = named_constellation("rotated-square-2d", 4);
        const SymbolTransform tr = make_transform_for_target(code.meta.b_vectors, ay);
        const Constellation ax = transform_constellation(tr, ay, true);
        const MinDetResult res = min_det_scan(code, ax, 2000, 5);
        const double cpd = coordinate_product_distance(ay);
        const double closed = std::pow(tr.c, 2.0 * code.nt) * std::pow(cpd, 2.0 * code.m);
        return std::abs(res.min_det - closed) <= 1e-6 * closed &&
               res.multi_group_sampled_min >= res.single_group_min;
    });

    guarded("descriptor json round-trip", [] {
        const Code code = double_symbol_code(3);
        const Code back = code_from_json(code_to_json(code));
        if (back.K() != code.K()) return false;
        for (int i = 0; i < code.K(); ++i)
            if (!approx_equal(back.weights[i], code.weights[i], 1e-14)) return false;
        return back.grouping.assignment == code.grouping.assignment &&
               back.meta.b_vectors == code.meta.b_vectors;
    });

    return failures;
}

}  // namespace stbc

#endif  // STBC_SELFTEST_HPP
