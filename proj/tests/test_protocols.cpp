#include "ncphase/protocols.hpp"

#include "test_helpers.hpp"

#include <catch2/catch.hpp>

#include <cmath>

using namespace ncphase;

namespace {

GaussianWigner coherent1(double x, double p, double width = 1.0) {
    Vector mean(2);
    mean << x, p;
    return GaussianWigner::coherent(1, mean, width);
}

} // namespace

TEST_CASE("cloning witness dichotomy") {
    GaussianWigner a = GaussianWigner::standard(1);

    auto self_w = no_cloning_witness(a, a);
    CHECK(self_w.raw_overlap == Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-13));
    CHECK(self_w.normalized == Approx(1.0).epsilon(1e-13));
    CHECK(self_w.classification == OverlapClass::identical);
    CHECK(self_w.theorem == "no-cloning");

    auto far_w = no_cloning_witness(a, coherent1(10.0, 0.0));
    CHECK(far_w.normalized < 1e-9);
    CHECK(far_w.classification == OverlapClass::orthogonal);

    auto mid_w = no_cloning_witness(a, coherent1(1.0, 0.0));
    CHECK(mid_w.normalized == Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(mid_w.classification == OverlapClass::contradiction);
    CHECK(mid_w.normalized_squared != Approx(mid_w.normalized).epsilon(1e-3));

    auto del_w = no_deleting_witness(a, coherent1(1.0, 0.0));
    CHECK(del_w.normalized == mid_w.normalized);
    CHECK(del_w.theorem == "no-deleting");
}

TEST_CASE("witness scaling for displaced pairs: both width conventions") {
    // Width-1 pairs separate as exp(-d^2/2); width-2 pairs (the hbar = 2
    // coherent family, still pure under (2 pi hbar)^n) as exp(-d^2/4).
    for (double d : {0.6, 1.0, 1.8, 3.0}) {
        auto w1 = no_cloning_witness(coherent1(0, 0, 1.0), coherent1(d, 0, 1.0));
        CHECK(w1.normalized == Approx(std::exp(-d * d / 2.0)).epsilon(1e-12));
        auto w2 = no_cloning_witness(coherent1(0, 0, 2.0), coherent1(d, 0, 2.0));
        CHECK(w2.normalized == Approx(std::exp(-d * d / 4.0)).epsilon(1e-12));
    }
}

TEST_CASE("grid witness requires normalised operands") {
    GaussianWigner a = GaussianWigner::standard(1);
    GaussianWigner b = coherent1(1.0, 0.0);
    auto axes = GaussianWigner::coherent(1, Vector::Zero(2), 1.0).default_axes(128, 10.0);
    GridFunction ga = a.to_grid(axes), gb = b.to_grid(axes);

    auto w = no_cloning_witness(ga, gb);
    CHECK(w.normalized == Approx(std::exp(-0.5)).margin(1e-6));
    CHECK(w.classification == OverlapClass::contradiction);

    GridFunction bad = ga;
    bad *= 1.5;
    CHECK_THROWS_AS(no_cloning_witness(bad, gb), std::invalid_argument);
}

TEST_CASE("ideal 1-D teleportation: exact reproduction") {
    GaussianWigner in = coherent1(1.0, 0.0);

    // Zero outcomes: the output is the input with no correction needed.
    auto run0 = teleport_ideal_1d(in, std::make_pair(0.0, 0.0));
    CHECK((run0.gaussian_output().mean() - in.mean()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(max_abs(run0.gaussian_output().shape() - in.shape()) < 1e-9);
    CHECK(run0.fidelity == Approx(1.0).margin(1e-6));

    // Specified outcomes (2, 1): the pre-correction state is the displaced
    // input, mean (1 - 2 sqrt2, sqrt2); the correction restores (1, 0).
    auto run = teleport_ideal_1d(in, std::make_pair(2.0, 1.0));
    Vector pre = run.pre_correction_mean();
    CHECK(pre[0] == Approx(1.0 - 2.0 * std::numbers::sqrt2).margin(1e-7));
    CHECK(pre[1] == Approx(std::numbers::sqrt2).margin(1e-7));
    CHECK((run.gaussian_output().mean() - in.mean()).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(run.fidelity == Approx(1.0).margin(1e-6));

    // Sampled outcomes, many runs: mean fidelity 1 within 1e-6.
    double fid = 0.0;
    for (int k = 0; k < 1000; ++k) fid += teleport_ideal_1d(in, std::nullopt, 1000 + k).fidelity;
    CHECK(fid / 1000.0 == Approx(1.0).margin(1e-6));

    CHECK_THROWS_AS(teleport_ideal_1d(GaussianWigner::standard(2), std::nullopt, 0),
                    std::invalid_argument);
}

TEST_CASE("ideal 1-D teleportation on grids") {
    GaussianWigner in = coherent1(0.5, -0.2);
    GridFunction grid = in.to_grid(in.default_axes(128));
    auto run = teleport_ideal_1d(grid, std::make_pair(0.7, -0.3));
    const auto& out = std::get<GridFunction>(run.corrected_output);
    double worst = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) worst = std::max(worst, std::abs(out[i] - grid[i]));
    CHECK(worst < 1e-6);
    CHECK(run.fidelity == Approx(1.0).margin(1e-5));
}

TEST_CASE("finite-r channel: closed-form fidelity curve") {
    GaussianWigner in = GaussianWigner::standard(1);

    auto run0 = teleport_finite_r(in, 0.0);
    CHECK(run0.fidelity == Approx(2.0 / 3.0).epsilon(1e-13));

    auto run1 = teleport_finite_r(in, 1.0);
    CHECK(run1.fidelity == Approx(2.0 / (2.0 + std::exp(-2.0))).epsilon(1e-12));
    CHECK(run1.fidelity == Approx(0.93662).margin(5e-6));

    auto run_delta = teleport_finite_r(in, delta_limit_squeezing);
    CHECK(run_delta.fidelity == Approx(1.0).margin(1e-6));

    // Strictly increasing in r for a fixed pure input.
    double prev = 0.0;
    for (double r : {0.0, 0.3, 0.7, 1.2, 2.0, 3.5}) {
        const double f = teleport_finite_r(in, r).fidelity;
        CHECK(f > prev);
        prev = f;
    }

    CHECK_THROWS_AS(teleport_finite_r(in, -1.0), std::invalid_argument);
}

TEST_CASE("protocol runs marginalise to the convolutional channel", "[slow]") {
    // Monte Carlo over sampled outcomes at finite r reproduces
    // W_in o G_sigma, sigma = e^{-2r}, pointwise.
    const double r = 0.5;
    GaussianWigner in = coherent1(0.4, -0.1);
    GaussianWigner expected = convolve(in, std::exp(-2.0 * r) * Matrix::Identity(2, 2));

    std::vector<Vector> probes;
    auto g = nctest::rng(2718);
    for (int i = 0; i < 10; ++i) probes.push_back(nctest::random_vector(g, 2, 1.5));

    const int samples = 100000;
    std::vector<double> acc(probes.size(), 0.0);
    for (int k = 0; k < samples; ++k) {
        auto run = teleport_protocol_1d(in, r, std::nullopt, 555000 + k);
        const auto& out = run.gaussian_output();
        for (std::size_t j = 0; j < probes.size(); ++j) acc[j] += out.evaluate(probes[j]);
    }
    for (std::size_t j = 0; j < probes.size(); ++j) {
        CHECK(acc[j] / samples == Approx(expected.evaluate(probes[j])).margin(2e-3));
    }
}

TEST_CASE("nc 2-D teleportation: observable gate") {
    auto params = DeformationParams::scalar(0.2, 0.1, 1.0);
    GaussianWigner in = GaussianWigner::standard(2);

    // The naive set is rejected, naming the pair and the commutator 2 theta.
    try {
        teleport_nc_2d(in, params, std::nullopt, 0, NCObservableSet::naive);
        FAIL("naive observable set must be rejected");
    } catch (const protocol_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("x_+") != std::string::npos);
        CHECK(msg.find("y_+") != std::string::npos);
        CHECK(msg.find("0.4") != std::string::npos);  // 2 theta
    }

    // The canonical set also fails if one tries it on a commutative-only
    // basis with theta = 0 but eta != 0 mixed incorrectly; with the proper
    // canonical set it passes for a range of deformations.
    for (auto [theta, eta] : {std::pair{0.2, 0.1}, {0.4, -0.2}, {0.0, 0.3}}) {
        auto p = DeformationParams::scalar(theta, eta, 1.0);
        CHECK_NOTHROW(teleport_nc_2d(in, p, Vector::Zero(4).eval(), 0));
    }
}

TEST_CASE("nc 2-D teleportation: exact reproduction") {
    auto params = DeformationParams::scalar(0.2, 0.1, 1.0);
    Vector mean(4);
    mean << 0.5, -0.3, 0.2, 0.7;
    GaussianWigner in(2, mean, Matrix::Identity(4, 4));

    auto run0 = teleport_nc_2d(in, params, Vector::Zero(4).eval(), 0);
    CHECK((run0.gaussian_output().mean() - mean).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(run0.fidelity == Approx(1.0).margin(1e-6));

    auto g = nctest::rng(1234);
    for (int trial = 0; trial < 5; ++trial) {
        Vector outcomes = nctest::random_vector(g, 4, 2.0);
        auto run = teleport_nc_2d(in, params, outcomes, 0);
        const auto& out = run.gaussian_output();
        // Pointwise reproduction of the input state.
        for (int probe = 0; probe < 8; ++probe) {
            Vector z = nctest::random_vector(g, 4, 2.0);
            CHECK(out.evaluate(z) == Approx(in.evaluate(z)).margin(1e-6));
        }
        CHECK(run.fidelity == Approx(1.0).margin(1e-6));
    }

    // Sampled outcomes keep fidelity 1 as well.
    auto sampled = teleport_nc_2d(in, params, std::nullopt, 99);
    CHECK(sampled.fidelity == Approx(1.0).margin(1e-6));

    CHECK_THROWS_AS(teleport_nc_2d(GaussianWigner::standard(1), params, std::nullopt, 0),
                    std::invalid_argument);
}

TEST_CASE("nc fidelity: SW invariance") {
    // theta = eta = 0 with the identity map reduces to the commutative form.
    auto flat = DeformationParams::scalar(0.0, 0.0, 1.0);
    auto id = SWMap::identity(flat);
    GaussianWigner base = GaussianWigner::standard(2);
    NCWignerFunction nc_id(base, id);
    const Matrix i4 = Matrix::Identity(4, 4);
    CHECK(nc_fidelity(nc_id, i4, id) == Approx(fidelity_gaussian(i4, i4)).epsilon(1e-13));

    // Unit input and cloner shapes in the NC frame give (2/3)^2 per the
    // two-mode closed form, independent of the deformation.
    for (double ratio : {0.1, 0.19, 0.3}) {
        auto p = DeformationParams::scalar(std::sqrt(ratio), std::sqrt(ratio), 1.0);
        auto map = build_scalar_sw(p);
        Matrix gamma_tilde = invert_sw(map).S * i4 * invert_sw(map).S.transpose();
        NCWignerFunction state(GaussianWigner(2, Vector::Zero(4), gamma_tilde), map);
        const double f = nc_fidelity(state, i4, map);
        CHECK(f == Approx(4.0 / 9.0).epsilon(1e-12));
    }

    // Random triples: the closed NC route equals the commutative formula on
    // the NC-frame shapes to 1e-10, and the grid route to 1e-4.
    auto g = nctest::rng(31415);
    for (int trial = 0; trial < 6; ++trial) {
        const double ratio = nctest::uniform(g, 0.05, 0.5);
        const double split = nctest::uniform(g, 0.5, 2.0);
        auto p = DeformationParams::scalar(std::sqrt(ratio) * split, std::sqrt(ratio) / split, 1.0);
        auto map = build_scalar_sw(p, nctest::uniform(g, 0.8, 1.25));
        Matrix gamma = nctest::random_spd(g, 4, 0.9, 1.3);
        Matrix sigma = nctest::random_spd(g, 4, 0.9, 1.3);
        Matrix sinv = invert_sw(map).S;
        NCWignerFunction state(GaussianWigner(2, Vector::Zero(4), sinv * gamma * sinv.transpose()),
                               map);
        const double closed = nc_fidelity_closed(state, sigma);
        const double reference = fidelity_gaussian(gamma, sigma);
        CHECK(closed == Approx(reference).epsilon(1e-10));
        if (trial < 2) {
            const double grid = nc_fidelity_grid(state, sigma, 32, 6.5);
            CHECK(grid == Approx(reference).epsilon(1e-4));
        }
    }
}

TEST_CASE("nc fidelity: oscillator input through the grid route", "[slow]") {
    // Grid-route NC fidelity of the deformed-oscillator ground state equals
    // the commutative grid fidelity of the pulled-back state scaled by
    // 1/sqrt(det Omega).
    auto p = DeformationParams::scalar(0.3, 0.2, 1.0);
    auto map = build_scalar_sw(p);
    auto hop = ho_params(map);
    HOWignerState w00(0, 0, hop);
    NCWignerFunction nc(w00, map);

    const Matrix sigma = Matrix::Identity(4, 4);
    const double f_nc = nc_fidelity_grid(nc, sigma, 32, 7.0);

    // Commutative side: the same integral in canonical variables.
    GridFunction wgrid = w00.to_grid(w00.default_axes(32));
    Matrix sinv = invert_sw(map).S;
    Matrix sigma_tilde = sinv * sigma * sinv.transpose();
    const double f_comm = nc.normalization() * grid_channel_fidelity(wgrid, sigma_tilde);
    CHECK(f_nc == Approx(f_comm).margin(1e-3));
}
