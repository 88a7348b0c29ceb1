#pragma once

// Quantum-information procedures on the state machinery: overlap witnesses
// for the no-cloning / no-deleting dichotomy, convolutional cloning fidelity
// in commutative and noncommutative frames, and step-by-step teleportation
// protocol simulations.
//
// Teleportation resources are realised uniformly as squeezed Gaussians; the
// delta limit uses r = 16 (channel width e^{-32} ~ 1.3e-14). Resource widths
// follow the half-scaled EPR covariance convention, under which the
// outcome-averaged protocol channel is exactly G_sigma with sigma = e^{-2r}.

#include "ncphase/deformation.hpp"
#include "ncphase/errors.hpp"
#include "ncphase/gaussian.hpp"
#include "ncphase/grid.hpp"
#include "ncphase/ncwigner.hpp"
#include "ncphase/polynomial.hpp"
#include "ncphase/star.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace ncphase {

inline constexpr double delta_limit_squeezing = 16.0;

// ---------------------------------------------------------------------------
// Cloning / deleting witnesses
// ---------------------------------------------------------------------------

enum class OverlapClass { orthogonal, identical, contradiction };

struct CloningWitness {
    double raw_overlap;        // P = Int W_a W_b
    double raw_squared;        // P^2
    double normalized;         // P / sqrt(Int W_a^2 Int W_b^2)
    double normalized_squared;
    OverlapClass classification;
    std::string theorem;  // "no-cloning" or "no-deleting"
};

namespace detail {

inline OverlapClass classify(double normalized) {
    if (normalized <= 1e-9) return OverlapClass::orthogonal;
    if (normalized >= 1.0 - 1e-9) return OverlapClass::identical;
    return OverlapClass::contradiction;
}

inline CloningWitness make_witness(double raw, double self_a, double self_b, const char* theorem) {
    CloningWitness w;
    w.raw_overlap = raw;
    w.raw_squared = raw * raw;
    w.normalized = raw / std::sqrt(self_a * self_b);
    w.normalized_squared = w.normalized * w.normalized;
    w.classification = classify(w.normalized);
    w.theorem = theorem;
    return w;
}

inline double grid_overlap(const GridFunction& a, const GridFunction& b) {
    if (!a.same_axes(b)) throw std::invalid_argument("overlap: grid mismatch");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return (acc * a.cell_volume()).real();
}

inline void require_normalized(const GridFunction& g) {
    if (std::abs(std::abs(g.integral()) - 1.0) > 1e-3)
        throw std::invalid_argument("witness operands must be normalised states");
}

} // namespace detail

inline CloningWitness no_cloning_witness(const GaussianWigner& a, const GaussianWigner& b) {
    return detail::make_witness(overlap(a, b), overlap(a, a), overlap(b, b), "no-cloning");
}

inline CloningWitness no_cloning_witness(const GridFunction& a, const GridFunction& b) {
    detail::require_normalized(a);
    detail::require_normalized(b);
    return detail::make_witness(detail::grid_overlap(a, b), detail::grid_overlap(a, a),
                                detail::grid_overlap(b, b), "no-cloning");
}

// The deleting argument reduces to the same P^2 = P dichotomy; a distinct
// operation so reports cite the right theorem.
inline CloningWitness no_deleting_witness(const GaussianWigner& a, const GaussianWigner& b) {
    auto w = no_cloning_witness(a, b);
    w.theorem = "no-deleting";
    return w;
}

inline CloningWitness no_deleting_witness(const GridFunction& a, const GridFunction& b) {
    auto w = no_cloning_witness(a, b);
    w.theorem = "no-deleting";
    return w;
}

// ---------------------------------------------------------------------------
// Teleportation runs
// ---------------------------------------------------------------------------

struct TeleportationRun {
    std::string protocol;  // "ideal-1d", "finite-r", "nc-2d"
    double r;              // resource squeezing used
    bool delta_limit;
    Vector outcomes;
    Vector correction;  // displacement Bob applies; zero for the channel form
    std::variant<std::monostate, GaussianWigner, GridFunction> corrected_output;
    double fidelity = 0.0;
    std::uint64_t seed = 0;

    const GaussianWigner& gaussian_output() const {
        return std::get<GaussianWigner>(corrected_output);
    }

    // Mean of the pre-correction conditional state.
    Vector pre_correction_mean() const { return gaussian_output().mean() - correction; }
};

namespace detail {

// Component rows of a squeezed coordinate pair (v_A, v_B) whose tight
// combination is v_A - sign * v_B. Component standard deviations are exact
// exponentials; no hyperbolic differences appear anywhere downstream.
struct ResourcePair {
    double wide;   // e^{ r} / 2
    double tight;  // e^{-r} / 2
};

inline ResourcePair resource_pair(double r) { return {0.5 * std::exp(r), 0.5 * std::exp(-r)}; }

// One-mode teleportation with a squeezing-r resource. Measured quadratures
// are x_plus = (x_A + x_C)/sqrt(2) and p_minus = (p_A - p_C)/sqrt(2); the
// corrected output displaces by (sqrt(2) x_plus, -sqrt(2) p_minus).
inline TeleportationRun teleport_1d_impl(const GaussianWigner& input, double r,
                                         std::optional<std::pair<double, double>> outcomes,
                                         std::uint64_t seed, const char* label, bool delta) {
    if (input.modes() != 1) throw std::invalid_argument("teleport 1d: one-mode input required");

    const auto rp = resource_pair(r);
    const double s2 = std::numbers::sqrt2;

    // Components: t = (wx+, wx-, wp+, wp-, c1, c2); input = mean + L (c1, c2).
    Eigen::LLT<Matrix> llt(input.covariance());
    const Matrix l = llt.matrixL();

    // Variables: (x_plus, p_minus, x_B, p_B).
    //   x_A = (rp.wide wx+ + rp.tight wx-)/sqrt2,  x_B = (-rp.wide wx+ + rp.tight wx-)/sqrt2
    //   p_A = (rp.wide wp+ + rp.tight wp-)/sqrt2,  p_B = ( rp.wide wp+ - rp.tight wp-)/sqrt2
    ComponentGaussian g;
    g.mean = Vector::Zero(4);
    g.factor = Matrix::Zero(4, 6);
    // x_plus = (x_A + x_C)/sqrt2
    g.factor(0, 0) = rp.wide / 2.0;
    g.factor(0, 1) = rp.tight / 2.0;
    g.factor.block(0, 4, 1, 2) = l.row(0) / s2;
    g.mean[0] = input.mean()[0] / s2;
    // p_minus = (p_A - p_C)/sqrt2
    g.factor(1, 2) = rp.wide / 2.0;
    g.factor(1, 3) = rp.tight / 2.0;
    g.factor.block(1, 4, 1, 2) = -l.row(1) / s2;
    g.mean[1] = -input.mean()[1] / s2;
    // x_B, p_B
    g.factor(2, 0) = -rp.wide / s2;
    g.factor(2, 1) = rp.tight / s2;
    g.factor(3, 2) = rp.wide / s2;
    g.factor(3, 3) = -rp.tight / s2;

    std::mt19937_64 rng(seed);
    double ox, op;
    if (outcomes) {
        ox = outcomes->first;
        op = outcomes->second;
    } else {
        const Vector draw = sample(g.select({0, 1}), rng);
        ox = draw[0];
        op = draw[1];
    }

    Vector obs(2);
    obs << ox, op;
    auto cond = condition(g, {0, 1}, obs, {2, 3});

    Vector shift(2);
    shift << s2 * ox, -s2 * op;
    GaussianWigner out(1, cond.mean + shift, 2.0 * cond.covariance);
    TeleportationRun run;
    run.protocol = label;
    run.r = r;
    run.delta_limit = delta;
    run.outcomes = obs;
    run.correction = shift;
    run.fidelity = fidelity(out, input);
    run.corrected_output = std::move(out);
    run.seed = seed;
    return run;
}

} // namespace detail

// Ideal one-mode protocol with the delta-limit resource.
inline TeleportationRun teleport_ideal_1d(const GaussianWigner& input,
                                          std::optional<std::pair<double, double>> outcomes = std::nullopt,
                                          std::uint64_t seed = 0) {
    return detail::teleport_1d_impl(input, delta_limit_squeezing, outcomes, seed, "ideal-1d", true);
}

// Full protocol run with a finite-r resource (used by the Monte Carlo
// consistency checks against the convolutional channel).
inline TeleportationRun teleport_protocol_1d(const GaussianWigner& input, double r,
                                             std::optional<std::pair<double, double>> outcomes,
                                             std::uint64_t seed) {
    if (!(r >= 0.0)) throw std::invalid_argument("squeezing must be >= 0");
    return detail::teleport_1d_impl(input, r, outcomes, seed, "finite-r-protocol", false);
}

// Grid-input ideal teleportation: with the delta resource the corrected
// output is the input itself; the pre-correction displacement is recorded
// through the outcomes.
inline TeleportationRun teleport_ideal_1d(const GridFunction& input,
                                          std::optional<std::pair<double, double>> outcomes,
                                          std::uint64_t seed = 0) {
    if (input.dimension() != 2) throw std::invalid_argument("teleport 1d: one-mode grid required");
    double ox = 0.0, op = 0.0;
    if (outcomes) {
        ox = outcomes->first;
        op = outcomes->second;
    } else {
        // Outcome statistics from the Gaussian moment fit of the input; with
        // the delta resource the correction cancels outcomes exactly, so the
        // fit affects only the sampled record.
        std::mt19937_64 rng(seed);
        const double wide = 0.5 * std::exp(delta_limit_squeezing);
        std::normal_distribution<double> n(0.0, wide / 2.0);
        ox = n(rng);
        op = n(rng);
    }
    TeleportationRun run;
    run.protocol = "ideal-1d";
    run.r = delta_limit_squeezing;
    run.delta_limit = true;
    run.outcomes = Vector(2);
    run.outcomes << ox, op;
    run.correction = Vector(2);
    run.correction << std::numbers::sqrt2 * ox, -std::numbers::sqrt2 * op;
    double self = 0.0;
    for (std::size_t i = 0; i < input.size(); ++i) self += std::norm(input[i]);
    run.fidelity = 2.0 * std::numbers::pi * self * input.cell_volume();
    run.corrected_output = input;
    run.seed = seed;
    return run;
}

// Convolutional finite-r channel: output = input o G_{sigma I}, sigma = e^{-2r}.
inline TeleportationRun teleport_finite_r(const GaussianWigner& input, double r) {
    if (input.modes() != 1) throw std::invalid_argument("teleport_finite_r: one-mode input required");
    if (!(r >= 0.0)) throw std::invalid_argument("squeezing must be >= 0");
    const double sigma = std::exp(-2.0 * r);
    const Matrix cloner = sigma * Matrix::Identity(2, 2);
    GaussianWigner out = convolve(input, cloner);
    TeleportationRun run;
    run.protocol = "finite-r";
    run.r = r;
    run.delta_limit = false;
    run.outcomes = Vector(0);
    run.correction = Vector::Zero(2);
    run.fidelity = fidelity_gaussian(input.shape(), cloner);
    run.corrected_output = std::move(out);
    run.seed = 0;
    return run;
}

// ---------------------------------------------------------------------------
// NC two-dimensional protocol
// ---------------------------------------------------------------------------

enum class NCObservableSet { canonical, naive };

namespace detail {

// Star-commutator gate over the two-particle (A, C) algebra. Coordinates are
// block-ordered (x_A, y_A, x_C, y_C, px_A, py_A, px_C, py_C); both particles
// carry the same theta/eta deformation. Observables are the unnormalised sum
// combinations v_A +- v_C, the convention under which the obstruction against
// measuring x_+ together with y_+ reads [x_+, y_+] = 2 i theta.
inline void check_observable_set(const DeformationParams& params, NCObservableSet set) {
    Matrix eps2 = antisymmetric_symbol2();
    Matrix theta4 = Matrix::Zero(4, 4), n4 = Matrix::Zero(4, 4);
    theta4.topLeftCorner(2, 2) = params.theta * eps2;
    theta4.bottomRightCorner(2, 2) = params.theta * eps2;
    n4.topLeftCorner(2, 2) = params.eta * eps2;
    n4.bottomRightCorner(2, 2) = params.eta * eps2;
    const auto two_particle = DeformationParams::general(theta4, n4, params.hbar);
    const auto star = StarStructure::deformed(two_particle);

    // coordinate indices: x_A=0, y_A=1, x_C=2, y_C=3, px_A=4, py_A=5, px_C=6, py_C=7
    auto combo = [&](int a_idx, int c_idx, double sign, const char* name) {
        PhasePolynomial p = PhasePolynomial::coordinate(8, a_idx);
        p += PhasePolynomial::coordinate(8, c_idx, sign);
        return std::pair<PhasePolynomial, std::string>{p, name};
    };
    std::vector<std::pair<PhasePolynomial, std::string>> obs;
    if (set == NCObservableSet::canonical) {
        obs.push_back(combo(0, 2, +1.0, "x_+"));
        obs.push_back(combo(1, 3, -1.0, "y_-"));
        obs.push_back(combo(4, 6, -1.0, "p_x-"));
        obs.push_back(combo(5, 7, +1.0, "p_y+"));
    } else {
        obs.push_back(combo(0, 2, +1.0, "x_+"));
        obs.push_back(combo(1, 3, +1.0, "y_+"));
        obs.push_back(combo(4, 6, +1.0, "p_x+"));
        obs.push_back(combo(5, 7, +1.0, "p_y+"));
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            const PhasePolynomial c = star_commutator(obs[i].first, obs[j].first, star);
            std::complex<double> value = 0.0;
            for (const auto& [e, coef] : c.terms()) value += coef;  // constant polynomial
            if (std::abs(value) > 1e-10) {
                std::ostringstream msg;
                msg << "observables [" << obs[i].second << ", " << obs[j].second
                    << "] do not commute: star-commutator = " << value.real() << " + "
                    << value.imag() << "i";
                throw protocol_error(msg.str());
            }
        }
    }
}

} // namespace detail

// Two-mode NC teleportation with the delta-limit resource
//   W_EPR = delta(x_A + x_B) delta(y_A - y_B) delta(px_A - px_B) delta(py_A + py_B).
// The observable set is gated through star-commutators before any state is
// touched; the canonical set is (x_+, y_-, p_x-, p_y+).
inline TeleportationRun teleport_nc_2d(const GaussianWigner& input, const DeformationParams& params,
                                       std::optional<Vector> outcomes = std::nullopt,
                                       std::uint64_t seed = 0,
                                       NCObservableSet set = NCObservableSet::canonical) {
    if (input.modes() != 2) throw std::invalid_argument("teleport_nc_2d: two-mode input required");
    detail::check_observable_set(params, set);

    const double r = delta_limit_squeezing;
    const auto rp = detail::resource_pair(r);
    const double s2 = std::numbers::sqrt2;

    // Pair correlation signs: tight combinations (x_A + x_B), (y_A - y_B),
    // (px_A - px_B), (py_A + py_B). sign = +1 when v_A ~ +v_B.
    const double corr[4] = {-1.0, +1.0, +1.0, -1.0};

    // Input coordinates in block order (x_C, y_C, px_C, py_C).
    Eigen::LLT<Matrix> llt(input.covariance());
    const Matrix l = llt.matrixL();

    // Components: 2 per coordinate pair (wide, tight) then 4 input components.
    // Variables: 4 measured, then 4 output (B coordinates).
    ncphase::detail::ComponentGaussian g;
    g.mean = Vector::Zero(8);
    g.factor = Matrix::Zero(8, 12);

    // measured_sign[i]: the input coordinate enters the measured combination
    // with this sign: x_+ -> +, y_- -> -, p_x- -> -, p_y+ -> +.
    const double msign[4] = {+1.0, -1.0, -1.0, +1.0};
    for (int c = 0; c < 4; ++c) {
        const int wide_col = 2 * c, tight_col = 2 * c + 1;
        // v_A = (wide + tight)/sqrt2; v_B = sign * (wide - tight)/sqrt2 ... see below.
        // With tight = (v_A - sign v_B)/sqrt2 ~ e^{-r}, wide = (v_A + sign v_B)/sqrt2:
        //   v_A = (wide + tight)/sqrt2,  v_B = sign (wide - tight)/sqrt2.
        // measured_c = (v_A + msign v_C)/sqrt2
        g.factor(c, wide_col) = rp.wide / 2.0;
        g.factor(c, tight_col) = rp.tight / 2.0;
        g.factor.block(c, 8, 1, 4) = msign[c] * l.row(c) / s2;
        g.mean[c] = msign[c] * input.mean()[c] / s2;
        // output_c = v_B
        g.factor(4 + c, wide_col) = corr[c] * rp.wide / s2;
        g.factor(4 + c, tight_col) = -corr[c] * rp.tight / s2;
    }

    std::mt19937_64 rng(seed);
    Vector obs(4);
    if (outcomes) {
        if (outcomes->size() != 4) throw std::invalid_argument("teleport_nc_2d: four outcomes required");
        obs = *outcomes;
    } else {
        obs = ncphase::detail::sample(g.select({0, 1, 2, 3}), rng);
    }

    auto cond = ncphase::detail::condition(g, {0, 1, 2, 3}, obs, {4, 5, 6, 7});

    // Corrections: x -> x - sqrt2 x_+, y -> y + sqrt2 y_-, p_x -> p_x + sqrt2 p_x-,
    // p_y -> p_y - sqrt2 p_y+ applied to the pre-correction state, i.e. the
    // mean gains (sqrt2 x_+, -sqrt2 y_-, -sqrt2 p_x-, sqrt2 p_y+).
    Vector shift(4);
    shift << s2 * obs[0], -s2 * obs[1], -s2 * obs[2], s2 * obs[3];

    GaussianWigner out(2, cond.mean + shift, 2.0 * cond.covariance);
    TeleportationRun run;
    run.protocol = "nc-2d";
    run.r = r;
    run.delta_limit = true;
    run.outcomes = obs;
    run.correction = shift;
    run.fidelity = fidelity(out, input);
    run.corrected_output = std::move(out);
    run.seed = seed;
    return run;
}

// ---------------------------------------------------------------------------
// NC fidelity
// ---------------------------------------------------------------------------

// Commutative grid fidelity F = (2 pi)^n Int W (G_Sigma * W).
inline double grid_channel_fidelity(const GridFunction& w, const Matrix& cloner_shape) {
    const int d = w.dimension();
    if (cloner_shape.rows() != d) throw std::invalid_argument("grid_channel_fidelity: dimension mismatch");
    const int modes = d / 2;
    GaussianWigner kernel(modes, Vector::Zero(d), cloner_shape);
    GridFunction g = kernel.to_grid(w.axes());
    GridFunction conv = grid_convolve(w, g);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * conv[i];
    return (acc * w.cell_volume()).real() * std::pow(2.0 * std::numbers::pi, modes);
}

// Closed-form NC entanglement fidelity via the pull-back route:
//   F_nc = (1/sqrt(det Omega)) 2^n / sqrt(det(2 Gamma_tilde + Sigma_tilde))
// with Sigma_tilde = S^{-1} Sigma S^{-T}; identical to the fidelity formula
// evaluated directly on the NC-frame shapes.
inline double nc_fidelity_closed(const NCWignerFunction& input, const Matrix& cloner_shape) {
    if (!input.is_gaussian())
        throw std::invalid_argument("nc_fidelity_closed: Gaussian base required");
    const auto& base = std::get<GaussianWigner>(input.base());
    const Matrix sinv = invert_sw(input.map()).S;
    const Matrix sigma_tilde = sinv * cloner_shape * sinv.transpose();
    return input.normalization() * fidelity_gaussian(base.shape(), sigma_tilde);
}

// Grid route: the double integral over NC variables.
inline double nc_fidelity_grid(const NCWignerFunction& input, const Matrix& cloner_shape,
                               int points = 32, double widths = 7.0) {
    auto axes = input.default_axes(points, widths);
    GridFunction w = input.to_grid(axes);
    return grid_channel_fidelity(w, cloner_shape);
}

inline double nc_fidelity(const NCWignerFunction& input, const Matrix& cloner_shape,
                          const SWMap& map, GridStarEngine = GridStarEngine::fourier) {
    if (max_abs(map.S - input.map().S) > 1e-12)
        throw std::invalid_argument("nc_fidelity: map does not match the input state");
    if (input.is_gaussian()) return nc_fidelity_closed(input, cloner_shape);
    return nc_fidelity_grid(input, cloner_shape);
}

} // namespace ncphase
