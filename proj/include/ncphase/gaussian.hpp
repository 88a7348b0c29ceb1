#pragma once

// Closed-form algebra of Gaussian Wigner functions in the convention
//
//     W(z) = exp(-(z - mu)^T Sigma^{-1} (z - mu)) / (pi^n sqrt(det Sigma)),
//
// with block-ordered phase space z = (x_1..x_n, p_1..p_n). The prefactor
// normalises the state for any SPD shape Sigma; the probability covariance of
// the density is Sigma / 2. Purity is (2 pi)^n Int W^2 = 1 / sqrt(det Sigma),
// so the vacuum/coherent family has Sigma = I.

#include "ncphase/grid.hpp"
#include "ncphase/linalg.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace ncphase {

class GaussianWigner {
public:
    GaussianWigner(int modes, Vector mean, Matrix shape)
        : modes_(modes), mean_(std::move(mean)), shape_(std::move(shape)) {
        if (modes_ < 1) throw std::invalid_argument("mode count must be positive");
        const int d = 2 * modes_;
        if (mean_.size() != d || shape_.rows() != d || shape_.cols() != d)
            throw std::invalid_argument("mean/shape dimension mismatch");
        require_spd(shape_, "shape");
        llt_.compute(shape_);
        Matrix l = llt_.matrixL();
        sqrt_det_ = l.diagonal().prod();
        inverse_shape_ = llt_.solve(Matrix::Identity(d, d));
    }

    static GaussianWigner standard(int modes) {
        return GaussianWigner(modes, Vector::Zero(2 * modes), Matrix::Identity(2 * modes, 2 * modes));
    }

    // Coherent-family state: Sigma = width * I displaced to the given mean.
    static GaussianWigner coherent(int modes, const Vector& mean, double width = 1.0) {
        return GaussianWigner(modes, mean, width * Matrix::Identity(2 * modes, 2 * modes));
    }

    int modes() const { return modes_; }
    int dim() const { return 2 * modes_; }
    const Vector& mean() const { return mean_; }
    const Matrix& shape() const { return shape_; }
    Matrix covariance() const { return 0.5 * shape_; }
    double sqrt_det_shape() const { return sqrt_det_; }

    double evaluate(const Vector& z) const {
        if (z.size() != dim()) throw std::invalid_argument("evaluate: dimension mismatch");
        const Vector d = z - mean_;
        const double q = d.dot(inverse_shape_ * d);
        return std::exp(-q) / (std::pow(std::numbers::pi, modes_) * sqrt_det_);
    }

    // 1 / sqrt(det Sigma) = (2 pi)^n Int W^2.
    double purity() const { return 1.0 / sqrt_det_; }

    std::vector<GridAxis> default_axes(int points = 128, double widths = 8.0) const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(shape_);
        const double w = widths * std::sqrt(es.eigenvalues().maxCoeff());
        std::vector<GridAxis> axes;
        for (int i = 0; i < dim(); ++i) axes.push_back({mean_[i] - w, mean_[i] + w, points});
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
    int modes_;
    Vector mean_;
    Matrix shape_;
    Eigen::LLT<Matrix> llt_;
    Matrix inverse_shape_;
    double sqrt_det_;
};

// Int a(z) b(z) dz in closed form:
//   exp(-d^T (Sa + Sb)^{-1} d) / (pi^n sqrt(det(Sa + Sb))),  d = mu_a - mu_b.
inline double overlap(const GaussianWigner& a, const GaussianWigner& b) {
    if (a.modes() != b.modes()) throw std::invalid_argument("overlap: mode count mismatch");
    const Matrix sum = a.shape() + b.shape();
    Eigen::LLT<Matrix> llt(sum);
    const Vector d = a.mean() - b.mean();
    const double q = d.dot(llt.solve(d));
    Matrix l = llt.matrixL();
    return std::exp(-q) / (std::pow(std::numbers::pi, a.modes()) * l.diagonal().prod());
}

// Gaussian channel W -> W o G_Sigma: shapes add, the mean is unchanged.
inline GaussianWigner convolve(const GaussianWigner& in, const Matrix& cloner_shape) {
    if (cloner_shape.rows() != in.dim() || cloner_shape.cols() != in.dim())
        throw std::invalid_argument("convolve: dimension mismatch");
    require_spd(cloner_shape, "cloner shape");
    return GaussianWigner(in.modes(), in.mean(), in.shape() + cloner_shape);
}

// Entanglement fidelity of the Gaussian channel: 2^n / sqrt(det(2 Gamma + Sigma)).
inline double fidelity_gaussian(const Matrix& input_shape, const Matrix& cloner_shape) {
    if (input_shape.rows() != cloner_shape.rows() || input_shape.rows() % 2 != 0)
        throw std::invalid_argument("fidelity_gaussian: dimension mismatch");
    require_spd(input_shape, "input shape");
    require_spd(cloner_shape, "cloner shape");
    const int n = static_cast<int>(input_shape.rows()) / 2;
    const Matrix m = 2.0 * input_shape + cloner_shape;
    Eigen::LLT<Matrix> llt(m);
    Matrix l = llt.matrixL();
    return std::pow(2.0, n) / l.diagonal().prod();
}

// (2 pi)^n Int W_out W_in: the overlap-based reproduction measure. Equals the
// purity when out == in.
inline double fidelity(const GaussianWigner& out, const GaussianWigner& in) {
    return std::pow(2.0 * std::numbers::pi, in.modes()) * overlap(out, in);
}

// ---------------------------------------------------------------------------
// EPR resource
// ---------------------------------------------------------------------------

// Two-mode squeezed state with position anti-correlation and momentum
// correlation of strength r. Stored as the normalised pure state
//     Sigma = [[ c, -s ],        c = cosh 2r  (x block, block ordering)
//              [ -s, c ]]  (+)   s = sinh 2r  (p block has +s),
// whose mode-frame blocks are beta = c I2 and gamma = s diag(-1, +1). The
// half-scaled shape (with purity 4 instead of 1) is kept available as
// cm1_shape(); it is the width convention under which the teleportation
// channel is exactly G_sigma with sigma = exp(-2r).
struct EPRResource {
    double r;
    GaussianWigner state;
    // Factor applied to the printed 4/pi^2 prefactor to restore Int W = 1.
    double applied_normalization;

    Matrix beta_block() const {
        Matrix b(2, 2);
        b << state.shape()(0, 0), state.shape()(0, 2), state.shape()(2, 0), state.shape()(2, 2);
        return b;
    }
    Matrix gamma_block() const {
        Matrix g(2, 2);
        g << state.shape()(0, 1), state.shape()(0, 3), state.shape()(2, 1), state.shape()(2, 3);
        return g;
    }
    // Mode-interleaved (x1, p1, x2, p2) raw covariance of the printed form.
    Matrix cm1_shape() const {
        Matrix m(4, 4);
        const int perm[4] = {0, 2, 1, 3};  // block -> interleaved
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = 0.5 * state.shape()(perm[i], perm[j]);
        return m;
    }
    double channel_sigma() const { return std::exp(-2.0 * r); }
};

inline EPRResource epr_resource(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("squeezing must be finite and >= 0");
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Matrix shape = Matrix::Zero(4, 4);
    shape(0, 0) = shape(1, 1) = shape(2, 2) = shape(3, 3) = c;
    shape(0, 1) = shape(1, 0) = -s;  // x1 x2
    shape(2, 3) = shape(3, 2) = s;   // p1 p2
    GaussianWigner state(2, Vector::Zero(4), shape);
    const double det = shape.determinant();
    const double applied = 1.0 / (4.0 * std::sqrt(det));
    return EPRResource{r, std::move(state), applied};
}

// ---------------------------------------------------------------------------
// Component-form Gaussian models (protocol machinery)
// ---------------------------------------------------------------------------

namespace detail {

// Variables v = mean + factor * t with t ~ N(0, I). Conditioning uses the
// square-root (QR) form so that resources squeezed to machine-delta widths
// (factor entries spanning ~e^{+-16}) never suffer the catastrophic
// cancellation that covariance-difference formulas produce.
struct ComponentGaussian {
    Vector mean;    // V
    Matrix factor;  // V x T

    int variables() const { return static_cast<int>(mean.size()); }

    Matrix covariance() const { return factor * factor.transpose(); }

    // New variable set u = M v + offset.
    ComponentGaussian map(const Matrix& m, const Vector& offset = Vector()) const {
        ComponentGaussian g;
        g.mean = m * mean;
        if (offset.size() > 0) g.mean += offset;
        g.factor = m * factor;
        return g;
    }

    ComponentGaussian select(const std::vector<int>& rows) const {
        ComponentGaussian g;
        g.mean.resize(rows.size());
        g.factor.resize(rows.size(), factor.cols());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            g.mean[static_cast<int>(i)] = mean[rows[i]];
            g.factor.row(static_cast<int>(i)) = factor.row(rows[i]);
        }
        return g;
    }
};

struct ConditionedGaussian {
    Vector mean;
    Matrix covariance;
};

// Conditions the output rows on exact observation of the observed rows.
// With X = (H F)^T and Y = (U F)^T and the QR factorisation X = Q R:
//   cov(o)      = R^T R
//   gain        = Y^T Q_1 R^{-T}
//   cov(u | o)  = (Q_2^T Y)^T (Q_2^T Y)      (a Gram product, no differencing)
inline ConditionedGaussian condition(const ComponentGaussian& joint,
                                     const std::vector<int>& observed_rows, const Vector& values,
                                     const std::vector<int>& output_rows) {
    const ComponentGaussian obs = joint.select(observed_rows);
    const ComponentGaussian out = joint.select(output_rows);
    const int k = obs.variables();
    const int t = static_cast<int>(joint.factor.cols());
    if (values.size() != k) throw std::invalid_argument("condition: observation size mismatch");

    const Matrix x = obs.factor.transpose();  // T x K
    const Matrix y = out.factor.transpose();  // T x J
    Eigen::HouseholderQR<Matrix> qr(x);
    const Matrix q = qr.householderQ();                                     // T x T
    const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();  // K x K
    for (int i = 0; i < k; ++i)
        if (std::abs(r(i, i)) < 1e-300)
            throw std::domain_error("condition: degenerate observation set");

    const Matrix q1 = q.leftCols(k);
    const Matrix q2 = q.rightCols(t - k);
    const Matrix gain = (y.transpose() * q1) * r.transpose()
                            .triangularView<Eigen::Lower>()
                            .solve(Matrix::Identity(k, k));
    const Matrix z2 = q2.transpose() * y;

    ConditionedGaussian c;
    c.mean = out.mean + gain * (values - obs.mean);
    c.covariance = z2.transpose() * z2;
    return c;
}

inline Vector sample(const ComponentGaussian& g, std::mt19937_64& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    Vector t(g.factor.cols());
    for (int i = 0; i < t.size(); ++i) t[i] = unit(rng);
    return g.mean + g.factor * t;
}

} // namespace detail

} // namespace ncphase
