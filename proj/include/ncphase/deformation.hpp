#pragma once

// Deformed Heisenberg-Weyl algebra data and Seiberg-Witten (SW) maps.
//
// Phase-space vectors use block ordering z = (x_1..x_n, p_1..p_n) throughout
// the library; the standard symplectic matrix is J = [[0, I], [-I, 0]] and the
// deformed one is Omega = [[Theta/hbar, I], [-I, N/hbar]].
//
// An SW map S = [[A, B], [C, D]] sends canonical variables xi = (q, k) to the
// deformed ones z = (x, p). Validity is the block constraint set
//     A D^T - B C^T = I,   A B^T - B A^T = Theta/hbar,   C D^T - D C^T = N/hbar,
// which is equivalent to S J S^T = Omega.

#include "ncphase/linalg.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace ncphase {

struct DeformationParams {
    int n = 2;           // spatial dimension
    double hbar = 1.0;
    double theta = 0.0;  // position-position deformation (scalar form)
    double eta = 0.0;    // momentum-momentum deformation (scalar form)
    Matrix Theta;        // n x n skew
    Matrix N;            // n x n skew

    // Scalar 2-D form: Theta = theta*eps, N = eta*eps.
    static DeformationParams scalar(double theta, double eta, double hbar = 1.0) {
        if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
        if (!(theta * eta < hbar * hbar))
            throw std::domain_error("deformation requires theta*eta < hbar^2");
        DeformationParams p;
        p.n = 2;
        p.hbar = hbar;
        p.theta = theta;
        p.eta = eta;
        const Matrix e = antisymmetric_symbol2();
        p.Theta = theta * e;
        p.N = eta * e;
        return p;
    }

    static DeformationParams general(const Matrix& Theta, const Matrix& N, double hbar) {
        if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
        if (Theta.rows() != N.rows() || Theta.rows() != Theta.cols() || N.rows() != N.cols())
            throw std::invalid_argument("Theta and N must be square with equal dimension");
        require_skew(Theta, "Theta");
        require_skew(N, "N");
        DeformationParams p;
        p.n = static_cast<int>(Theta.rows());
        p.hbar = hbar;
        p.Theta = Theta;
        p.N = N;
        if (p.n == 2) {
            p.theta = Theta(0, 1);
            p.eta = N(0, 1);
            if (is_scalar_form(p) && !(p.theta * p.eta < hbar * hbar))
                throw std::domain_error("deformation requires theta*eta < hbar^2");
        }
        return p;
    }

    static bool is_scalar_form(const DeformationParams& p) {
        if (p.n != 2) return false;
        const Matrix e = antisymmetric_symbol2();
        return max_abs(p.Theta - p.theta * e) <= 1e-14 * (1.0 + std::abs(p.theta)) &&
               max_abs(p.N - p.eta * e) <= 1e-14 * (1.0 + std::abs(p.eta));
    }

    bool is_scalar() const { return is_scalar_form(*this); }
};

struct SymplecticData {
    Matrix J;      // 2n x 2n, J^2 = -I
    Matrix Omega;  // [[Theta/hbar, I], [-I, N/hbar]]

    static SymplecticData from(const DeformationParams& p) {
        const int n = p.n;
        const Matrix id = Matrix::Identity(n, n);
        const Matrix zero = Matrix::Zero(n, n);
        SymplecticData s;
        s.J = assemble_blocks(zero, id, -id, zero);
        s.Omega = assemble_blocks(p.Theta / p.hbar, id, -id, p.N / p.hbar);
        return s;
    }
};

struct SWMap {
    Matrix A, B, C, D;  // n x n blocks
    Matrix S;           // [[A,B],[C,D]], maps xi = (q,k) to z = (x,p)
    DeformationParams params;
    double lambda = std::numeric_limits<double>::quiet_NaN();
    double mu = std::numeric_limits<double>::quiet_NaN();

    int n() const { return static_cast<int>(A.rows()); }
    int dim() const { return 2 * n(); }

    static SWMap from_blocks(Matrix a, Matrix b, Matrix c, Matrix d, DeformationParams p) {
        SWMap m;
        m.A = std::move(a);
        m.B = std::move(b);
        m.C = std::move(c);
        m.D = std::move(d);
        m.S = assemble_blocks(m.A, m.B, m.C, m.D);
        m.params = std::move(p);
        return m;
    }

    static SWMap identity(DeformationParams p) {
        const Matrix id = Matrix::Identity(p.n, p.n);
        const Matrix zero = Matrix::Zero(p.n, p.n);
        return from_blocks(id, zero, zero, id, std::move(p));
    }
};

struct SWResiduals {
    double canonical;  // |A D^T - B C^T - I|
    double position;   // |A B^T - B A^T - Theta/hbar|
    double momentum;   // |C D^T - D C^T - N/hbar|

    double max() const { return std::max(canonical, std::max(position, momentum)); }
};

// Residuals of the map-validity constraints; a reporting operation, it never
// throws on constraint failure.
inline SWResiduals validate_sw(const SWMap& m, const DeformationParams& p) {
    if (m.n() != p.n) throw std::invalid_argument("validate_sw: dimension mismatch");
    const Matrix id = Matrix::Identity(p.n, p.n);
    SWResiduals r;
    r.canonical = max_abs(m.A * m.D.transpose() - m.B * m.C.transpose() - id);
    r.position = max_abs(m.A * m.B.transpose() - m.B * m.A.transpose() - p.Theta / p.hbar);
    r.momentum = max_abs(m.C * m.D.transpose() - m.D * m.C.transpose() - p.N / p.hbar);
    return r;
}

inline constexpr double sw_validity_tolerance = 1e-10;

inline bool sw_is_valid(const SWMap& m, const DeformationParams& p) {
    return validate_sw(m, p).max() <= sw_validity_tolerance;
}

// Scalar product s = lambda*mu solving the commutator-preservation constraint
//     lambda*mu*(1 - lambda*mu) = theta*eta / (4 hbar^2),
// on the root branch continuous with s = 1 at zero deformation. This is the
// branch that also yields det S = 1 - theta*eta/hbar^2 and the scalar inverse
// map factors (1 - theta*eta/hbar^2)^(-1/2).
inline double scalar_constraint_product(double theta, double eta, double hbar) {
    const double ratio = theta * eta / (hbar * hbar);
    if (!(ratio < 1.0)) throw std::domain_error("theta*eta >= hbar^2: map degenerates");
    return 0.5 * (1.0 + std::sqrt(1.0 - ratio));
}

// Scalar SW map  x_i = lambda q_i - theta/(2 lambda hbar) eps_ij k_j,
//                p_i = mu k_i + eta/(2 mu hbar) eps_ij q_j.
// When lambda is omitted the symmetric split lambda = mu = sqrt(s) is used.
inline SWMap build_scalar_sw(const DeformationParams& p, std::optional<double> lambda = std::nullopt) {
    if (!p.is_scalar())
        throw std::invalid_argument("build_scalar_sw requires scalar 2-D parameters");
    const double s = scalar_constraint_product(p.theta, p.eta, p.hbar);
    double lam, mu;
    if (lambda) {
        if (!(*lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
        lam = *lambda;
        mu = s / lam;
    } else {
        lam = mu = std::sqrt(s);
    }
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix e = antisymmetric_symbol2();
    SWMap m = SWMap::from_blocks(lam * id, -(p.theta / (2.0 * lam * p.hbar)) * e,
                                 (p.eta / (2.0 * mu * p.hbar)) * e, mu * id, p);
    m.lambda = lam;
    m.mu = mu;
    return m;
}

// Inverse map, valid as the linear transformation z -> xi. Returned with the
// same block partition; it is not itself an SW map for the same parameters.
inline SWMap invert_sw(const SWMap& m) {
    Eigen::FullPivLU<Matrix> lu(m.S);
    if (!lu.isInvertible()) throw std::domain_error("invert_sw: degenerate map");
    const Matrix inv = lu.inverse();
    const int n = m.n();
    SWMap r;
    r.A = inv.topLeftCorner(n, n);
    r.B = inv.topRightCorner(n, n);
    r.C = inv.bottomLeftCorner(n, n);
    r.D = inv.bottomRightCorner(n, n);
    r.S = inv;
    r.params = m.params;
    return r;
}

// det S; equals sqrt(det Omega) on the branch continuous with +1 at zero
// deformation, and 1 - theta*eta/hbar^2 in the scalar case.
inline double jacobian(const SWMap& m) { return m.S.determinant(); }

// Sigma = S Sigma_tilde S^T (shape matrices transform congruently).
inline Matrix transform_covariance(const SWMap& m, const Matrix& shape) {
    if (shape.rows() != m.dim() || shape.cols() != m.dim())
        throw std::invalid_argument("transform_covariance: dimension mismatch");
    require_spd(shape, "shape");
    return m.S * shape * m.S.transpose();
}

} // namespace ncphase
