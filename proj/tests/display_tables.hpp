// Frozen per-entry weight coefficients for the reproduced reference codes,
// used by both the unit and acceptance suites.
#ifndef STBC_TESTS_DISPLAY_TABLES_HPP
#define STBC_TESTS_DISPLAY_TABLES_HPP

#include "stbc/matrix.hpp"

namespace stbc_tests {

using stbc::cplx;

/// Expected coefficient of symbol x_w (0-based w) at entry (r, c) in the
/// first three rows of the 6x6 four-group code built with the identity
/// eigenbasis. Entries are combinations z_1..z_6 with z_i = x_i + j x_{9+i}
/// (i = 1..3) and z_{3+i} = x_{3+i} + j x_{6+i}; row r carries signs
/// (+,+,-), (+,+,+), (+,-,+) on its diagonal slots.
inline cplx six_by_six_head_coefficient(int w, int r, int c) {
    static const int sign[3][3] = {{1, 1, -1}, {1, 1, 1}, {1, -1, 1}};
    const cplx j(0.0, 1.0);
    cplx expect(0.0, 0.0);
    if (c == r) {
        for (int i = 0; i < 3; ++i) {
            if (w == i) expect += static_cast<double>(sign[r][i]);
            if (w == 9 + i) expect += j * static_cast<double>(sign[r][i]);
        }
    } else if (c == r + 3) {
        for (int i = 0; i < 3; ++i) {
            if (w == 3 + i) expect += static_cast<double>(sign[r][i]);
            if (w == 6 + i) expect += j * static_cast<double>(sign[r][i]);
        }
    }
    return expect;
}

/// Expected coefficient of x_w (0-based) at entry (r, c) of the displayed
/// 4x4 single-symbol-decodable code:
///   row 0:  x1+jx7   x2+jx8   x3+jx5   x4+jx6
///   row 1:  x2+jx8   x1+jx7   x4+jx6   x3+jx5
///   row 2: -x3+jx5  -x4+jx6   x1-jx7   x2-jx8
///   row 3: -x4+jx6  -x3+jx5   x2-jx8   x1-jx7
inline cplx four_by_four_ssd_coefficient(int w, int r, int c) {
    struct Term {
        int xr;     // 1-based real-part symbol
        double sr;  // its sign
        int xi;     // 1-based imaginary-part symbol
        double si;  // its sign
    };
    static const Term table[4][4] = {
        {{1, 1, 7, 1}, {2, 1, 8, 1}, {3, 1, 5, 1}, {4, 1, 6, 1}},
        {{2, 1, 8, 1}, {1, 1, 7, 1}, {4, 1, 6, 1}, {3, 1, 5, 1}},
        {{3, -1, 5, 1}, {4, -1, 6, 1}, {1, 1, 7, -1}, {2, 1, 8, -1}},
        {{4, -1, 6, 1}, {3, -1, 5, 1}, {2, 1, 8, -1}, {1, 1, 7, -1}},
    };
    const cplx j(0.0, 1.0);
    const Term& t = table[r][c];
    cplx expect(0.0, 0.0);
    if (w == t.xr - 1) expect += t.sr;
    if (w == t.xi - 1) expect += j * t.si;
    return expect;
}

}  // namespace stbc_tests

#endif  // STBC_TESTS_DISPLAY_TABLES_HPP
