#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace ncphase {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// 2x2 antisymmetric symbol, eps(0,1) = +1.
inline Matrix antisymmetric_symbol2() {
    Matrix e(2, 2);
    e << 0.0, 1.0, -1.0, 0.0;
    return e;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_skew(const Matrix& m, double tol = 1e-12) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m + m.transpose()) <= tol * (1.0 + max_abs(m));
}

inline void require_skew(const Matrix& m, const char* name, double tol = 1e-12) {
    if (!is_skew(m, tol))
        throw std::invalid_argument(std::string(name) + " must be skew-symmetric");
}

inline bool is_symmetric(const Matrix& m, double tol = 1e-10) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.transpose()) <= tol * (1.0 + max_abs(m));
}

// Symmetric positive definite test via Cholesky.
inline bool is_spd(const Matrix& m, double tol = 1e-10) {
    if (!is_symmetric(m, tol)) return false;
    Eigen::LLT<Matrix> llt(m);
    return llt.info() == Eigen::Success;
}

inline void require_spd(const Matrix& m, const char* name) {
    if (!is_spd(m)) throw std::invalid_argument(std::string(name) + " must be symmetric positive definite");
}

// Assemble [[A, B], [C, D]] from equally sized square blocks.
inline Matrix assemble_blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    const auto n = a.rows();
    Matrix s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = a;
    s.topRightCorner(n, n) = b;
    s.bottomLeftCorner(n, n) = c;
    s.bottomRightCorner(n, n) = d;
    return s;
}

} // namespace ncphase
