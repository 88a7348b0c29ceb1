// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerance in code; oracles used here
// (direct double integrals, commutator tables, closed forms) are independent
// of the library paths they certify.

#include "ncphase/deformation.hpp"
#include "ncphase/gaussian.hpp"
#include "ncphase/grid.hpp"
#include "ncphase/ncwigner.hpp"
#include "ncphase/polynomial.hpp"
#include "ncphase/protocols.hpp"
#include "ncphase/star.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace ncphase;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    Clock::time_point start = Clock::now();
    bool ok = true;
    std::string detail;

    Criterion(int id_, const char* title_, double budget)
        : id(id_), title(title_), budget_seconds(budget) {}

    void require(bool condition, const std::string& what) {
        if (!condition && ok) detail = what;
        ok = ok && condition;
    }

    void finish() {
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        const bool in_budget = elapsed < budget_seconds;
        if (ok && !in_budget) detail = "runtime budget exceeded";
        const bool pass = ok && in_budget;
        if (!pass) ++failures;
        std::printf("%s  %d. %s (%.1fs / budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL", id, title,
                    elapsed, budget_seconds, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
};

double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

Matrix random_spd(std::mt19937_64& g, int dim, double lo, double hi) {
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = uniform(g, -1.0, 1.0);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Vector ev(dim);
    for (int i = 0; i < dim; ++i) ev[i] = uniform(g, lo, hi);
    return q * ev.asDiagonal() * q.transpose();
}

// Literal double integral F = 2 pi Int Int W(z') G(z - z') W(z) dz dz' for a
// unit-shape cloner, G(u) = exp(-|u|^2)/pi, evaluated as a full double
// Riemann sum via separable difference tables (independent of the library's
// convolution and closed-form paths).
double fidelity_double_integral(const GridFunction& w) {
    const int n0 = w.axis(0).count, n1 = w.axis(1).count;
    const double d0 = w.axis(0).step(), d1 = w.axis(1).step();
    std::vector<double> t0(2 * n0 - 1), t1(2 * n1 - 1);
    for (int m = -(n0 - 1); m <= n0 - 1; ++m) t0[m + n0 - 1] = std::exp(-(m * d0) * (m * d0));
    for (int m = -(n1 - 1); m <= n1 - 1; ++m) t1[m + n1 - 1] = std::exp(-(m * d1) * (m * d1));

    // A[j0', j1] = sum_j0 W[j0, j1] t0[j0 - j0']
    std::vector<double> a(static_cast<std::size_t>(n0) * n1, 0.0);
    for (int j0p = 0; j0p < n0; ++j0p)
        for (int j1 = 0; j1 < n1; ++j1) {
            double acc = 0.0;
            for (int j0 = 0; j0 < n0; ++j0)
                acc += w[static_cast<std::size_t>(j0) * n1 + j1].real() * t0[j0 - j0p + n0 - 1];
            a[static_cast<std::size_t>(j0p) * n1 + j1] = acc;
        }
    // F = (2 pi / pi) d^4 sum_{j'} W[j'] sum_{j1} A t1.
    double f = 0.0;
    for (int j0p = 0; j0p < n0; ++j0p)
        for (int j1p = 0; j1p < n1; ++j1p) {
            double acc = 0.0;
            for (int j1 = 0; j1 < n1; ++j1)
                acc += a[static_cast<std::size_t>(j0p) * n1 + j1] * t1[j1 - j1p + n1 - 1];
            f += w[static_cast<std::size_t>(j0p) * n1 + j1p].real() * acc;
        }
    return 2.0 * f * d0 * d1 * d0 * d1;
}

void criterion_1() {
    Criterion c(1, "coherent-state cloning fidelity 2/3 (closed form and grid double integral)",
                1.0);
    const Matrix i2 = Matrix::Identity(2, 2);
    const double closed = fidelity_gaussian(i2, i2);
    c.require(std::abs(closed - 2.0 / 3.0) < 1e-14, "closed form deviates from 2/3");

    GaussianWigner in = GaussianWigner::standard(1);
    GridFunction w = in.to_grid(in.default_axes(64));
    const double grid = fidelity_double_integral(w);
    c.require(std::abs(grid - 2.0 / 3.0) < 1e-4,
              "double integral " + std::to_string(grid) + " deviates from 2/3");
    c.finish();
}

void criterion_2() {
    Criterion c(2, "SW invariance of the fidelity (closed 1e-10 x50, grid 1e-4)", 30.0);
    std::mt19937_64 g(20240202);
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        const double ratio = uniform(g, 0.02, 0.5);
        const double split = uniform(g, 0.6, 1.6);
        auto params =
            DeformationParams::scalar(std::sqrt(ratio) * split, std::sqrt(ratio) / split, 1.0);
        auto map = build_scalar_sw(params, uniform(g, 0.8, 1.25));
        const Matrix gamma = random_spd(g, 4, 0.9, 1.3);
        const Matrix sigma = random_spd(g, 4, 0.9, 1.3);
        const Matrix sinv = invert_sw(map).S;
        NCWignerFunction state(GaussianWigner(2, Vector::Zero(4), sinv * gamma * sinv.transpose()),
                               map);
        const double reference = fidelity_gaussian(gamma, sigma);
        const double closed = nc_fidelity_closed(state, sigma);
        c.require(std::abs(closed - reference) <= 1e-10 * reference,
                  "closed route mismatch at trial " + std::to_string(trial));
        const double grid = nc_fidelity_grid(state, sigma, 32, 6.5);
        c.require(std::abs(grid - reference) <= 1e-4 * reference,
                  "grid route mismatch at trial " + std::to_string(trial));
    }
    c.finish();
}

void criterion_3() {
    Criterion c(3, "scalar map Jacobian equals 1 - theta*eta/hbar^2 (100 maps, rel 1e-12)", 1.0);
    std::mt19937_64 g(333);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const double theta = uniform(g, -0.7, 0.7);
        const double eta = uniform(g, -0.7, 0.7);
        const double hbar = uniform(g, 0.85, 1.5);  // keeps theta*eta < hbar^2
        auto params = DeformationParams::scalar(theta, eta, hbar);
        auto map = build_scalar_sw(params, uniform(g, 0.6, 1.5));
        const double expect = 1.0 - theta * eta / (hbar * hbar);
        c.require(std::abs(jacobian(map) - expect) <= 1e-12 * std::abs(expect),
                  "jacobian mismatch at trial " + std::to_string(trial));
    }
    c.finish();
}

void criterion_4() {
    Criterion c(4, "commutator preservation through generated maps (1e-10)", 5.0);
    std::mt19937_64 g(444);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const double theta = uniform(g, -0.7, 0.7);
        const double eta = uniform(g, -0.7, 0.7);
        const double hbar = uniform(g, 0.85, 1.5);  // keeps theta*eta < hbar^2
        auto params = DeformationParams::scalar(theta, eta, hbar);
        auto map = build_scalar_sw(params, uniform(g, 0.6, 1.5));

        const auto star = StarStructure::moyal(2, hbar);
        std::vector<PhasePolynomial> zc;
        for (int i = 0; i < 4; ++i) {
            PhasePolynomial zi(4);
            for (int k = 0; k < 4; ++k)
                if (map.S(i, k) != 0.0) zi += PhasePolynomial::coordinate(4, k, map.S(i, k));
            zc.push_back(zi);
        }
        const Matrix expected = hbar * SymplecticData::from(params).Omega;
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                auto comm = star_commutator(zc[i], zc[j], star);
                std::complex<double> v = 0.0;
                for (const auto& [e, coef] : comm.terms()) v += coef;
                worst = std::max(worst, std::abs(v - std::complex<double>{0.0, expected(i, j)}));
            }
        }
        c.require(worst <= 1e-10, "commutator table off by " + std::to_string(worst));
    }
    c.finish();
}

void criterion_5() {
    Criterion c(5, "integral theorem on Gaussian and polynomial-times-Gaussian pairs", 60.0);
    std::mt19937_64 g(555);
    const auto L = StarStructure::moyal(1, 1.0);
    std::vector<GridAxis> axes{{-6.0, 6.0, 64}, {-6.0, 6.0, 64}};

    auto gaussian_grid = [&](double a, double x0, double p0) {
        return GridFunction::sample(axes, [=](const std::vector<double>& pt) {
            const double dx = pt[0] - x0, dp = pt[1] - p0;
            return std::complex<double>{std::exp(-a * (dx * dx + dp * dp)), 0.0};
        });
    };

    for (int trial = 0; trial < 20 && c.ok; ++trial) {
        GridFunction a =
            gaussian_grid(uniform(g, 0.5, 0.9), uniform(g, -0.5, 0.5), uniform(g, -0.5, 0.5));
        GridFunction b =
            gaussian_grid(uniform(g, 0.5, 0.9), uniform(g, -0.5, 0.5), uniform(g, -0.5, 0.5));
        for (auto engine : {GridStarEngine::kernel, GridStarEngine::fourier}) {
            auto rep = verify_integral_theorem(a, b, L, engine);
            c.require(rep.difference < 1e-6 * std::abs(rep.rhs),
                      "gaussian pair " + std::to_string(trial) + " rel diff " +
                          std::to_string(rep.difference / std::abs(rep.rhs)));
        }
    }
    for (int trial = 0; trial < 20 && c.ok; ++trial) {
        const double aw = uniform(g, 0.5, 0.9);
        const double c0 = uniform(g, -1.0, 1.0), c1 = uniform(g, -1.0, 1.0),
                     c2 = uniform(g, -0.5, 0.5);
        GridFunction a = GridFunction::sample(axes, [=](const std::vector<double>& pt) {
            const double poly = c0 + c1 * pt[0] + c2 * pt[0] * pt[1];
            return std::complex<double>{poly * std::exp(-aw * (pt[0] * pt[0] + pt[1] * pt[1])),
                                        0.0};
        });
        GridFunction b =
            gaussian_grid(uniform(g, 0.5, 0.9), uniform(g, -0.4, 0.4), uniform(g, -0.4, 0.4));
        for (auto engine : {GridStarEngine::kernel, GridStarEngine::fourier}) {
            auto rep = verify_integral_theorem(a, b, L, engine);
            c.require(rep.difference < 1e-6 * std::abs(rep.rhs),
                      "poly pair " + std::to_string(trial) + " rel diff " +
                          std::to_string(rep.difference / std::abs(rep.rhs)));
        }
    }
    c.finish();
}

void criterion_6() {
    Criterion c(6, "star associativity, 100 degree-<=4 triples, four structures (1e-12)", 10.0);
    std::mt19937_64 g(666);
    auto params = DeformationParams::scalar(0.3, 0.2, 1.0);
    std::vector<StarStructure> structures = {
        StarStructure::moyal(2, params.hbar), StarStructure::deformed(params),
        StarStructure::embed(StarStructure::position_sector(params), 4, {0, 1}),
        StarStructure::embed(StarStructure::momentum_sector(params), 4, {2, 3})};

    auto random_poly = [&](int terms) {
        PhasePolynomial p(4);
        std::uniform_int_distribution<int> deg(0, 4);
        for (int t = 0; t < terms; ++t) {
            PhasePolynomial::Exponents e(4, 0);
            int budget = deg(g);
            for (int axis = 0; axis < 4 && budget > 0; ++axis) {
                std::uniform_int_distribution<int> take(0, budget);
                const int k = take(g);
                e[axis] = static_cast<std::uint8_t>(k);
                budget -= k;
            }
            p.add_term(e, {uniform(g, -1, 1), uniform(g, -1, 1)});
        }
        return p;
    };

    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        PhasePolynomial a = random_poly(4), b = random_poly(4), cc = random_poly(4);
        // Every structure sees every fourth triple; all see 25 triples each.
        const auto& L = structures[trial % structures.size()];
        PhasePolynomial lhs = star_poly(star_poly(a, b, L), cc, L);
        PhasePolynomial rhs = star_poly(a, star_poly(b, cc, L), L);
        PhasePolynomial diff = lhs - rhs;
        double m = 0.0;
        for (const auto& [e, coef] : diff.terms()) m = std::max(m, std::abs(coef));
        const double scale = std::max(1.0, lhs.max_abs_coefficient());
        c.require(m <= 1e-12 * scale, "associativity defect " + std::to_string(m / scale));
    }
    c.finish();
}

void criterion_7() {
    Criterion c(7, "NC oscillator stargenvalues, n1+n2 <= 3, three settings (res 1e-3, norm 1e-4)",
                300.0);
    const auto L = StarStructure::moyal(2, 1.0);
    for (auto [theta, eta] : {std::pair{0.0, 0.0}, {0.2, 0.0}, {0.2, 0.1}}) {
        auto params = DeformationParams::scalar(theta, eta, 1.0);
        auto map = build_scalar_sw(params);
        auto hop = ho_params(map);
        auto H = ho_hamiltonian(hop);
        for (int n1 = 0; n1 <= 3 && c.ok; ++n1) {
            for (int n2 = 0; n1 + n2 <= 3 && c.ok; ++n2) {
                HOWignerState w(n1, n2, hop);
                // 32 points per axis resolve the lowest states; the spectral
                // bandwidth grows like sqrt(2n+1), so higher states use 64.
                const int points = (n1 + n2 <= 1) ? 32 : 64;
                GridFunction grid = w.to_grid(w.default_axes(points));
                const double res = stargen_residual(H, grid, w.energy(), L);
                const double norm = grid.integral().real();
                c.require(res < 1e-3, "residual " + std::to_string(res) + " at n=(" +
                                          std::to_string(n1) + "," + std::to_string(n2) + ")");
                c.require(std::abs(norm - 1.0) < 1e-4, "norm deviates at n=(" + std::to_string(n1) +
                                                           "," + std::to_string(n2) + ")");
            }
        }
    }
    c.finish();
}

void criterion_8() {
    Criterion c(8, "teleportation curve, delta limit, and the NC 2-D protocol", 120.0);
    GaussianWigner in = GaussianWigner::standard(1);
    for (double r : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const double expect = 2.0 / (2.0 + std::exp(-2.0 * r));
        c.require(std::abs(teleport_finite_r(in, r).fidelity - expect) < 1e-6,
                  "finite-r curve at r=" + std::to_string(r));
    }
    c.require(std::abs(teleport_finite_r(in, 16.0).fidelity - 1.0) < 1e-6, "delta limit fidelity");

    // NC protocol: canonical observables reproduce the input pointwise.
    auto params = DeformationParams::scalar(0.2, 0.1, 1.0);
    Vector mean(4);
    mean << 0.4, -0.2, 0.3, 0.6;
    GaussianWigner in2(2, mean, Matrix::Identity(4, 4));
    std::mt19937_64 g(888);
    for (int trial = 0; trial < 5 && c.ok; ++trial) {
        Vector outcomes(4);
        for (int i = 0; i < 4; ++i) outcomes[i] = uniform(g, -2.0, 2.0);
        auto run = teleport_nc_2d(in2, params, outcomes, 0);
        const auto& out = run.gaussian_output();
        for (int probe = 0; probe < 20; ++probe) {
            Vector z(4);
            for (int i = 0; i < 4; ++i) z[i] = uniform(g, -2.5, 2.5);
            c.require(std::abs(out.evaluate(z) - in2.evaluate(z)) < 1e-6,
                      "nc output deviates pointwise");
        }
        c.require(std::abs(run.fidelity - 1.0) < 1e-6, "nc fidelity");
    }

    // The naive observable set is rejected, reporting [x_+, y_+] = 2 i theta.
    bool rejected = false;
    std::string message;
    try {
        teleport_nc_2d(in2, params, std::nullopt, 0, NCObservableSet::naive);
    } catch (const protocol_error& e) {
        rejected = true;
        message = e.what();
    }
    c.require(rejected, "naive observable set was not rejected");
    c.require(message.find("x_+") != std::string::npos && message.find("y_+") != std::string::npos,
              "rejection does not name the offending pair");
    c.require(message.find("0.4") != std::string::npos,
              "rejection does not report the 2 i theta commutator");
    c.finish();
}

void criterion_9() {
    Criterion c(9, "no-cloning dichotomy witness and overlap scaling", 5.0);

    // Width-2 coherent pairs (pure under the hbar = 2 purity weight) separate
    // as exp(-d^2/4); width-1 pairs as exp(-d^2/2). Checked against the
    // closed form and a grid quadrature oracle.
    auto quad_overlap = [](const GaussianWigner& a, const GaussianWigner& b) {
        auto axes = a.default_axes(256, 10.0);
        for (std::size_t i = 0; i < axes.size(); ++i) {
            axes[i].min = std::min(axes[i].min, b.mean()[static_cast<int>(i)] - 12.0);
            axes[i].max = std::max(axes[i].max, b.mean()[static_cast<int>(i)] + 12.0);
        }
        GridFunction ga = a.to_grid(axes), gb = b.to_grid(axes);
        double acc = 0.0;
        for (std::size_t i = 0; i < ga.size(); ++i) acc += ga[i].real() * gb[i].real();
        return acc * ga.cell_volume();
    };

    bool contradiction_found = false;
    for (double d : {0.5, 1.0, 2.0, 3.0}) {
        Vector m(2);
        m << d, 0.0;
        GaussianWigner a2 = GaussianWigner::coherent(1, Vector::Zero(2), 2.0);
        GaussianWigner b2 = GaussianWigner::coherent(1, m, 2.0);
        auto w2 = no_cloning_witness(a2, b2);
        c.require(std::abs(w2.normalized - std::exp(-d * d / 4.0)) < 1e-6,
                  "exp(-d^2/4) scaling broken at d=" + std::to_string(d));
        const double raw_quad = quad_overlap(a2, b2);
        const double self_quad = quad_overlap(a2, a2);
        c.require(std::abs(raw_quad / self_quad - w2.normalized) < 1e-6,
                  "quadrature oracle disagrees at d=" + std::to_string(d));

        GaussianWigner a1 = GaussianWigner::standard(1);
        GaussianWigner b1 = GaussianWigner::coherent(1, m, 1.0);
        auto w1 = no_cloning_witness(a1, b1);
        c.require(std::abs(w1.normalized - std::exp(-d * d / 2.0)) < 1e-6,
                  "exp(-d^2/2) scaling broken at d=" + std::to_string(d));

        contradiction_found |= w2.classification == OverlapClass::contradiction;
        contradiction_found |= w1.classification == OverlapClass::contradiction;
    }
    c.require(contradiction_found, "no contradiction pair certified");
    c.finish();
}

} // namespace

int main() {
    std::printf("ncphase acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
