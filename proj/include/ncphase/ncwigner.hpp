#pragma once

// Noncommutative Wigner functions and the 2-D deformed harmonic oscillator.
//
// An NC Wigner function is built from a commutative one through an SW map:
//     f_nc(z) = (1 / sqrt(det Omega)) f_w(S^{-1} z),   sqrt(det Omega) = det S,
// which preserves normalisation.
//
// The deformed oscillator H_nc = (x^2 + p^2)/2, rewritten through the scalar
// map in canonical variables (q1, q2, k1, k2), is
//     H = A^2 q^2 + B^2 k^2 + gamma (k1 q2 - k2 q1),
//     A^2 = lambda^2/2 + eta^2/(8 mu^2 hbar^2),
//     B^2 = mu^2/2 + theta^2/(8 lambda^2 hbar^2),
//     gamma = (theta + eta) / (2 hbar).
// Its Moyal eigenfunctions separate in the chiral quadratics
//     Omega_pm = (A/B) q^2 + (B/A) k^2 -+ 2 (k1 q2 - k2 q1),
// giving
//     W_{n1,n2} = ((-1)^{n1+n2} / (pi hbar)^2) exp(-(Omega_+ + Omega_-)/(2 hbar))
//                 L_{n2}(Omega_+/hbar) L_{n1}(Omega_-/hbar),
//     E_{n1,n2} = hbar [ 2 A B (n1 + n2 + 1) + gamma (n1 - n2) ].
// The n1 <-> Omega_- pairing is what makes H * W = E W hold with the +gamma
// spectrum; the index attached to Omega_+ carries the -gamma branch. On the
// commutator-preserving constraint branch the product identity reads
//     4 A^2 B^2 = 1 + ((theta - eta) / (2 hbar))^2,
// which reduces to 1 + gamma^2 exactly when theta*eta = 0.

#include "ncphase/deformation.hpp"
#include "ncphase/gaussian.hpp"
#include "ncphase/grid.hpp"
#include "ncphase/laguerre.hpp"
#include "ncphase/polynomial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace ncphase {

struct HOParams {
    double A, B, gamma, hbar;
    double lambda, mu, theta, eta;

    // Residual of 4 A^2 B^2 - 1 - ((theta - eta)/(2 hbar))^2, zero for maps
    // obeying the commutator-preservation constraint.
    double constraint_residual() const {
        const double gm = (theta - eta) / (2.0 * hbar);
        return 4.0 * A * A * B * B - 1.0 - gm * gm;
    }
};

inline HOParams ho_params(const SWMap& map) {
    if (!map.params.is_scalar()) throw std::invalid_argument("ho_params: scalar 2-D map required");
    const double lam = map.A(0, 0);
    const double mu = map.D(0, 0);
    const Matrix id = Matrix::Identity(2, 2);
    if (max_abs(map.A - lam * id) > 1e-12 || max_abs(map.D - mu * id) > 1e-12 || lam <= 0.0 || mu <= 0.0)
        throw std::invalid_argument("ho_params: map is not of the scalar form");
    const double hbar = map.params.hbar;
    const double theta = map.params.theta;
    const double eta = map.params.eta;
    HOParams p;
    p.hbar = hbar;
    p.lambda = lam;
    p.mu = mu;
    p.theta = theta;
    p.eta = eta;
    p.A = std::sqrt(lam * lam / 2.0 + eta * eta / (8.0 * mu * mu * hbar * hbar));
    p.B = std::sqrt(mu * mu / 2.0 + theta * theta / (8.0 * lam * lam * hbar * hbar));
    p.gamma = (theta + eta) / (2.0 * hbar);
    return p;
}

// Degree-2 polynomial in (q1, q2, k1, k2).
inline PhasePolynomial ho_hamiltonian(const HOParams& p) {
    PhasePolynomial h(4);
    auto sq = [](int axis) {
        PhasePolynomial::Exponents e(4, 0);
        e[axis] = 2;
        return e;
    };
    h.add_term(sq(0), p.A * p.A);
    h.add_term(sq(1), p.A * p.A);
    h.add_term(sq(2), p.B * p.B);
    h.add_term(sq(3), p.B * p.B);
    // gamma (k1 q2 - k2 q1)
    PhasePolynomial::Exponents k1q2(4, 0), k2q1(4, 0);
    k1q2[2] = 1;
    k1q2[1] = 1;
    k2q1[3] = 1;
    k2q1[0] = 1;
    h.add_term(k1q2, p.gamma);
    h.add_term(k2q1, -p.gamma);
    return h;
}

inline double ho_energy(int n1, int n2, const HOParams& p) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("ho_energy: quantum numbers must be >= 0");
    return p.hbar * (2.0 * p.A * p.B * (n1 + n2 + 1) + p.gamma * (n1 - n2));
}

class HOWignerState {
public:
    static constexpr int max_index = 12;

    HOWignerState(int n1, int n2, HOParams params) : n1_(n1), n2_(n2), p_(params) {
        if (n1 < 0 || n2 < 0 || n1 > max_index || n2 > max_index)
            throw std::invalid_argument("HO quantum numbers out of supported range");
    }

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    const HOParams& params() const { return p_; }
    double energy() const { return ho_energy(n1_, n2_, p_); }

    double omega_plus(double q1, double q2, double k1, double k2) const {
        return chiral(q1, q2, k1, k2, -1.0);
    }
    double omega_minus(double q1, double q2, double k1, double k2) const {
        return chiral(q1, q2, k1, k2, +1.0);
    }

    double evaluate(double q1, double q2, double k1, double k2) const {
        const double op = omega_plus(q1, q2, k1, k2);
        const double om = omega_minus(q1, q2, k1, k2);
        const double h = p_.hbar;
        const double sign = ((n1_ + n2_) % 2 == 0) ? 1.0 : -1.0;
        return sign / (std::numbers::pi * std::numbers::pi * h * h) * std::exp(-(op + om) / (2.0 * h)) *
               laguerre(n2_, op / h) * laguerre(n1_, om / h);
    }

    std::vector<GridAxis> default_axes(int points = 64) const {
        // Classical turning radius sqrt(2n+1) widths plus tail margin; the
        // n = 0 case reduces to +-6 vacuum widths.
        const double ratio = std::max(p_.B / p_.A, p_.A / p_.B);
        const double margin = std::max(6.0, std::sqrt(2.0 * (n1_ + n2_) + 1.0) + 5.0);
        const double extent = margin * std::sqrt(p_.hbar * ratio);
        return std::vector<GridAxis>(4, GridAxis{-extent, extent, points});
    }

    GridFunction to_grid(std::vector<GridAxis> axes) const {
        return GridFunction::sample(std::move(axes), [this](const std::vector<double>& pt) {
            return std::complex<double>{evaluate(pt[0], pt[1], pt[2], pt[3]), 0.0};
        });
    }

private:
    double chiral(double q1, double q2, double k1, double k2, double lz_sign) const {
        const double q2sum = q1 * q1 + q2 * q2;
        const double k2sum = k1 * k1 + k2 * k2;
        const double lz = q1 * k2 - q2 * k1;  // Omega_pm = ... -+ 2(k1 q2 - k2 q1) = ... +- 2 lz
        return (p_.A / p_.B) * q2sum + (p_.B / p_.A) * k2sum - lz_sign * 2.0 * lz;
    }

    int n1_, n2_;
    HOParams p_;
};

// ---------------------------------------------------------------------------
// NC Wigner wrapper
// ---------------------------------------------------------------------------

namespace detail {

// Multilinear interpolation; zero outside the grid domain.
inline double interpolate(const GridFunction& g, const Vector& pt) {
    const int d = g.dimension();
    std::vector<int> base(d);
    std::vector<double> frac(d);
    for (int a = 0; a < d; ++a) {
        const auto& ax = g.axis(a);
        const double u = (pt[a] - ax.min) / ax.step();
        const int i = static_cast<int>(std::floor(u));
        if (i < 0 || i >= ax.count - 1) return 0.0;
        base[a] = i;
        frac[a] = u - i;
    }
    double acc = 0.0;
    std::vector<int> idx(d);
    for (int corner = 0; corner < (1 << d); ++corner) {
        double wgt = 1.0;
        for (int a = 0; a < d; ++a) {
            const bool hi = corner & (1 << a);
            idx[a] = base[a] + (hi ? 1 : 0);
            wgt *= hi ? frac[a] : 1.0 - frac[a];
        }
        acc += wgt * g[g.flatten(idx)].real();
    }
    return acc;
}

} // namespace detail

class NCWignerFunction {
public:
    using Base = std::variant<GaussianWigner, HOWignerState, GridFunction>;

    NCWignerFunction(Base base, SWMap map) : base_(std::move(base)), map_(std::move(map)) {
        if (!sw_is_valid(map_, map_.params))
            throw std::invalid_argument("NCWignerFunction: invalid SW map");
        const int d = map_.dim();
        if (base_dimension() != d) throw std::invalid_argument("NCWignerFunction: dimension mismatch");
        inverse_ = invert_sw(map_);
        det_s_ = jacobian(map_);
        if (!(det_s_ > 0.0)) throw std::domain_error("NCWignerFunction: map orientation must be positive");
    }

    const SWMap& map() const { return map_; }
    const Base& base() const { return base_; }
    double normalization() const { return 1.0 / det_s_; }
    int dim() const { return map_.dim(); }

    bool is_gaussian() const { return std::holds_alternative<GaussianWigner>(base_); }

    // For Gaussian bases the NC state is itself an exactly normalised Gaussian
    // with shape S Sigma S^T: the 1/sqrt(det Omega) prefactor is absorbed.
    GaussianWigner as_gaussian() const {
        const auto& g = std::get<GaussianWigner>(base_);
        return GaussianWigner(g.modes(), map_.S * g.mean(), map_.S * g.shape() * map_.S.transpose());
    }

    double evaluate(const Vector& z) const {
        if (z.size() != dim()) throw std::invalid_argument("evaluate: dimension mismatch");
        const Vector xi = inverse_.S * z;
        double w;
        if (const auto* g = std::get_if<GaussianWigner>(&base_)) {
            w = g->evaluate(xi);
        } else if (const auto* h = std::get_if<HOWignerState>(&base_)) {
            w = h->evaluate(xi[0], xi[1], xi[2], xi[3]);
        } else {
            w = detail::interpolate(std::get<GridFunction>(base_), xi);
        }
        return w / det_s_;
    }

    std::vector<GridAxis> default_axes(int points = 64, double widths = 8.0) const {
        if (const auto* g = std::get_if<GaussianWigner>(&base_)) {
            return as_gaussian().default_axes(points, widths);
        }
        if (const auto* h = std::get_if<HOWignerState>(&base_)) {
            auto axes = h->default_axes(points);
            // Stretch by the map norm so the pulled-back support stays inside.
            const double grow = map_.S.cwiseAbs().rowwise().sum().maxCoeff();
            for (auto& ax : axes) {
                ax.min *= grow;
                ax.max *= grow;
            }
            return axes;
        }
        auto axes = std::get<GridFunction>(base_).axes();
        return axes;
    }

    GridFunction to_grid(std::vector<GridAxis> axes) const {
        const int d = dim();
        return GridFunction::sample(std::move(axes), [this, d](const std::vector<double>& pt) {
            Vector z(d);
            for (int i = 0; i < d; ++i) z[i] = pt[i];
            return std::complex<double>{evaluate(z), 0.0};
        });
    }

private:
    int base_dimension() const {
        if (const auto* g = std::get_if<GaussianWigner>(&base_)) return g->dim();
        if (std::holds_alternative<HOWignerState>(base_)) return 4;
        return std::get<GridFunction>(base_).dimension();
    }

    Base base_;
    SWMap map_;
    SWMap inverse_;
    double det_s_;
};

inline NCWignerFunction nc_from_commutative(NCWignerFunction::Base base, const SWMap& map) {
    if (const auto* g = std::get_if<GridFunction>(&base)) {
        const double norm = std::abs(g->integral());
        if (std::abs(norm - 1.0) > 1e-3)
            throw std::invalid_argument("nc_from_commutative: base grid is not normalised");
    }
    return NCWignerFunction(std::move(base), map);
}

} // namespace ncphase
