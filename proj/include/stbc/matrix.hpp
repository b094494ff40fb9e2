#ifndef STBC_MATRIX_HPP
#define STBC_MATRIX_HPP

#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace stbc {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sizes in this library stay at or below
/// 64x64; all operations are plain loops over contiguous storage.
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0)
            throw std::invalid_argument("Matrix: dimensions must be positive");
    }

    Matrix(std::initializer_list<std::initializer_list<cplx>> init) {
        rows_ = static_cast<int>(init.size());
        if (rows_ == 0) throw std::invalid_argument("Matrix: empty init list");
        cols_ = static_cast<int>(init.begin()->size());
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_)
                throw std::invalid_argument("Matrix: ragged init list");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    bool finite() const {
        for (const cplx& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

inline Matrix zeros(int rows, int cols) { return Matrix(rows, cols); }

inline Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

inline Matrix diag(const std::vector<cplx>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

inline Matrix diag_real(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

inline void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "operator+");
    Matrix out = a;
    for (size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "operator-");
    Matrix out = a;
    for (size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

inline Matrix operator*(const cplx& s, const Matrix& m) {
    Matrix out = m;
    for (cplx& z : out.data()) z *= s;
    return out;
}

inline Matrix operator*(const Matrix& m, const cplx& s) { return s * m; }
inline Matrix operator*(double s, const Matrix& m) { return cplx(s, 0.0) * m; }

inline Matrix& operator+=(Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "operator+=");
    for (size_t i = 0; i < a.data().size(); ++i) a.data()[i] += b.data()[i];
    return a;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx arK = a(r, k);
            if (arK == cplx(0.0, 0.0)) continue;
            for (int c = 0; c < b.cols(); ++c) out(r, c) += arK * b(k, c);
        }
    return out;
}

/// Kronecker product: block (p,q) of the result is a(p,q) * b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int p = 0; p < a.rows(); ++p)
        for (int q = 0; q < a.cols(); ++q) {
            const cplx apq = a(p, q);
            if (apq == cplx(0.0, 0.0)) continue;
            for (int r = 0; r < b.rows(); ++r)
                for (int c = 0; c < b.cols(); ++c)
                    out(p * b.rows() + r, q * b.cols() + c) = apq * b(r, c);
        }
    return out;
}

/// Conjugate transpose.
inline Matrix adjoint(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

inline Matrix conj_entries(const Matrix& m) {
    Matrix out = m;
    for (cplx& z : out.data()) z = std::conj(z);
    return out;
}

inline Matrix transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
    return out;
}

inline cplx trace(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("trace: non-square input");
    cplx t = 0.0;
    for (int i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (const cplx& z : m.data()) s += std::norm(z);
    return std::sqrt(s);
}

/// Determinant via LU with partial pivoting. Intended for the small square
/// matrices of this library (<= 64x64).
inline cplx det(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("det: non-square input");
    const int n = m.rows();
    Matrix lu = m;
    cplx d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu(k, k));
        for (int r = k + 1; r < n; ++r) {
            const double mag = std::abs(lu(r, k));
            if (mag > best) { best = mag; piv = r; }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
            d = -d;
        }
        d *= lu(k, k);
        for (int r = k + 1; r < n; ++r) {
            const cplx f = lu(r, k) / lu(k, k);
            for (int c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
        }
    }
    return d;
}

/// True iff ||a - b||_F <= tol * max(1, ||a||_F).
inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    check_same_shape(a, b, "approx_equal");
    return frobenius_norm(a - b) <= tol * std::max(1.0, frobenius_norm(a));
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
    return m.square() && approx_equal(m, adjoint(m), tol);
}

inline bool is_unitary(const Matrix& m, double tol = 1e-10) {
    return m.square() && approx_equal(adjoint(m) * m, identity(m.rows()), tol);
}

inline bool commute(const Matrix& a, const Matrix& b, double tol = 1e-10) {
    return frobenius_norm(a * b - b * a) <= tol * std::max(1.0, frobenius_norm(a) * frobenius_norm(b));
}

}  // namespace stbc

#endif  // STBC_MATRIX_HPP
