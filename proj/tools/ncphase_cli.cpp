// ncphase command line: parameter sweeps, the invariant verification suite,
// teleportation run records, and oscillator tables.
//
// Exit codes: 0 all checks pass, 1 tolerance failure, 2 configuration error,
// 3 I/O error.

#include "ncphase/deformation.hpp"
#include "ncphase/gaussian.hpp"
#include "ncphase/grid.hpp"
#include "ncphase/io.hpp"
#include "ncphase/ncwigner.hpp"
#include "ncphase/polynomial.hpp"
#include "ncphase/protocols.hpp"
#include "ncphase/star.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ncphase;

constexpr int exit_ok = 0;
constexpr int exit_tolerance = 1;
constexpr int exit_config = 2;
constexpr int exit_io = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& out, const std::string& format) const {
        if (format == "json-like") {
            out << "{\"columns\":[";
            for (std::size_t i = 0; i < columns.size(); ++i)
                out << (i ? "," : "") << '"' << columns[i] << '"';
            out << "],\"rows\":[";
            for (std::size_t r = 0; r < rows.size(); ++r) {
                out << (r ? "," : "") << '[';
                for (std::size_t i = 0; i < rows[r].size(); ++i)
                    out << (i ? "," : "") << '"' << rows[r][i] << '"';
                out << ']';
            }
            out << "]}\n";
            return;
        }
        out << "# ";
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
    }
};

int emit(const Table& t, const std::string& output, const std::string& format) {
    if (output.empty() || output == "-") {
        t.write(std::cout, format);
        return exit_ok;
    }
    std::ofstream f(output);
    if (!f) {
        std::cerr << "cannot open output file: " << output << "\n";
        return exit_io;
    }
    t.write(f, format);
    if (!f) {
        std::cerr << "write failed: " << output << "\n";
        return exit_io;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// fidelity
// ---------------------------------------------------------------------------

struct FidelityOptions {
    std::vector<double> r_values{0.0, 0.5, 1.0, 2.0};
    std::vector<double> theta_values, eta_values;
    double hbar = 1.0;
    double lambda = 0.0;  // 0: symmetric split
    int grid_points = 64;
    double tolerance = 1e-4;
    std::string output, format = "table";
};

int run_fidelity(const FidelityOptions& opt) {
    Table table;
    table.columns = {"theta", "eta", "r_or_channel", "F_closed", "F_grid", "abs_delta"};
    bool tolerance_failed = false;

    const auto& rs = opt.r_values;
    const auto& thetas = opt.theta_values;
    const auto& etas = opt.eta_values;
    if (rs.empty() && thetas.empty())
        throw CLI::ValidationError("fidelity", "empty sweep ranges");

    // Commutative channel rows: one-mode coherent input, sigma = e^{-2r}.
    // The quadrature oracle integrates
    //   F = (2 pi) Int dz' Int dw W(z') e^{-|w|^2}/pi W(z' + sqrt(sigma) w),
    // the double integral in difference variables scaled by sqrt(sigma), so
    // narrow channels stay resolved on a fixed lattice.
    for (double r : rs) {
        const double sigma = std::exp(-2.0 * r);
        const Matrix cloner = sigma * Matrix::Identity(2, 2);
        const double f_closed = fidelity_gaussian(Matrix::Identity(2, 2), cloner);
        GaussianWigner in = GaussianWigner::standard(1);
        const double rt = std::sqrt(sigma);
        const int nz = opt.grid_points, nw = 32;
        const double ez = 6.0, ew = 5.0;
        const double dz = 2.0 * ez / nz, dw = 2.0 * ew / nw;
        double f_grid = 0.0;
        Vector z(2), zw(2);
        for (int i = 0; i < nz; ++i) {
            for (int j = 0; j < nz; ++j) {
                z << -ez + i * dz, -ez + j * dz;
                const double wz = in.evaluate(z);
                if (wz < 1e-18) continue;
                double inner = 0.0;
                for (int a = 0; a < nw; ++a) {
                    for (int b = 0; b < nw; ++b) {
                        const double w0 = -ew + a * dw, w1 = -ew + b * dw;
                        zw << z[0] + rt * w0, z[1] + rt * w1;
                        inner += std::exp(-(w0 * w0 + w1 * w1)) * in.evaluate(zw);
                    }
                }
                f_grid += wz * inner;
            }
        }
        f_grid *= 2.0 * dz * dz * dw * dw;  // (2 pi) / pi = 2 times the cell volumes
        const double delta = std::abs(f_closed - f_grid);
        tolerance_failed |= delta > opt.tolerance;
        table.rows.push_back({fmt(0.0), fmt(0.0), fmt(r), fmt(f_closed), fmt(f_grid), fmt(delta)});
    }

    // Noncommutative rows: two-mode unit input/cloner shapes in the NC frame,
    // swept over the deformation.
    const Matrix i4 = Matrix::Identity(4, 4);
    for (double theta : thetas) {
        const auto eta_values = etas.empty() ? std::vector<double>{0.0} : etas;
        for (double eta : eta_values) {
            auto params = DeformationParams::scalar(theta, eta, opt.hbar);
            auto map = opt.lambda > 0.0 ? build_scalar_sw(params, opt.lambda)
                                        : build_scalar_sw(params);
            const Matrix sinv = invert_sw(map).S;
            NCWignerFunction state(GaussianWigner(2, Vector::Zero(4), sinv * i4 * sinv.transpose()),
                                   map);
            const double f_closed = nc_fidelity_closed(state, i4);
            const double f_grid = nc_fidelity_grid(state, i4, std::min(opt.grid_points, 32), 6.5);
            const double delta = std::abs(f_closed - f_grid);
            tolerance_failed |= delta > opt.tolerance;
            table.rows.push_back(
                {fmt(theta), fmt(eta), "nc", fmt(f_closed), fmt(f_grid), fmt(delta)});
        }
    }

    const int rc = emit(table, opt.output, opt.format);
    if (rc != exit_ok) return rc;
    return tolerance_failed ? exit_tolerance : exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
    double theta = 0.2, eta = 0.1, hbar = 1.0;
    int grid_points = 32;  // stargenvalue tolerances are calibrated here
    std::uint64_t seed = 7;
    std::string output, format = "table";
};

int run_verify(const VerifyOptions& opt) {
    Table table;
    table.columns = {"check", "value", "threshold", "status"};
    bool failed = false;

    auto report = [&](const std::string& name, double value, double threshold, bool degraded_ok) {
        std::string status = "pass";
        if (!(value <= threshold)) {
            status = degraded_ok ? "warn" : "fail";
            failed |= !degraded_ok;
        }
        table.rows.push_back({name, fmt(value), fmt(threshold), status});
    };

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    // SW validity over a parameter sweep.
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double th = 0.6 * unit(rng), et = 0.6 * unit(rng);
            auto p = DeformationParams::scalar(th, et, opt.hbar);
            worst = std::max(worst, validate_sw(build_scalar_sw(p), p).max());
        }
        report("sw-validity", worst, 1e-10, false);
    }

    // Star associativity on random polynomial triples.
    {
        auto p = DeformationParams::scalar(opt.theta, opt.eta, opt.hbar);
        auto L = StarStructure::deformed(p);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            PhasePolynomial a(4), b(4), c(4);
            for (int t = 0; t < 4; ++t) {
                PhasePolynomial::Exponents e(4, 0);
                e[static_cast<std::size_t>((trial + t) % 4)] =
                    static_cast<std::uint8_t>(1 + (t % 3));
                a.add_term(e, unit(rng));
                std::rotate(e.begin(), e.begin() + 1, e.end());
                b.add_term(e, unit(rng));
                std::rotate(e.begin(), e.begin() + 1, e.end());
                c.add_term(e, unit(rng));
            }
            PhasePolynomial lhs = star_poly(star_poly(a, b, L), c, L);
            PhasePolynomial rhs = star_poly(a, star_poly(b, c, L), L);
            PhasePolynomial diff = lhs - rhs;
            double m = 0.0;
            for (const auto& [e, coef] : diff.terms()) m = std::max(m, std::abs(coef));
            worst = std::max(worst, m / std::max(1.0, lhs.max_abs_coefficient()));
        }
        report("star-associativity", worst, 1e-12, false);
    }

    // Integral theorem, both grid engines.
    {
        auto L = StarStructure::moyal(1, opt.hbar);
        std::vector<GridAxis> axes{{-6.0, 6.0, 64}, {-6.0, 6.0, 64}};
        auto gauss = [&](double a, double x0, double p0) {
            return GridFunction::sample(axes, [=](const std::vector<double>& pt) {
                const double dx = pt[0] - x0, dp = pt[1] - p0;
                return std::complex<double>{std::exp(-a * (dx * dx + dp * dp)), 0.0};
            });
        };
        GridFunction a = gauss(0.7, 0.3, -0.2), b = gauss(0.5, -0.4, 0.5);
        auto rk = verify_integral_theorem(a, b, L, GridStarEngine::kernel);
        auto rf = verify_integral_theorem(a, b, L, GridStarEngine::fourier);
        report("integral-theorem-kernel", rk.difference / std::abs(rk.rhs), 1e-6, false);
        report("integral-theorem-fourier", rf.difference / std::abs(rf.rhs), 1e-6, false);
    }

    // Normalization and stargenvalue of the deformed oscillator.
    {
        auto p = DeformationParams::scalar(opt.theta, opt.eta, opt.hbar);
        auto map = build_scalar_sw(p);
        auto hop = ho_params(map);
        auto H = ho_hamiltonian(hop);
        auto L = StarStructure::moyal(2, opt.hbar);
        HOWignerState w10(1, 0, hop);
        GridFunction grid = w10.to_grid(w10.default_axes(opt.grid_points));
        report("ho-normalization", std::abs(grid.integral().real() - 1.0), 1e-4,
               opt.grid_points < 32);
        const double res = stargen_residual(H, grid, w10.energy(), L);
        // Below the calibrated grid the residual degrades; report as warn.
        report("stargenvalue", res, 1e-3, opt.grid_points < 32);
    }

    // SW invariance of the fidelity (closed route).
    {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const double ratio = 0.05 + 0.4 * std::abs(unit(rng));
            auto p = DeformationParams::scalar(std::sqrt(ratio), std::sqrt(ratio), opt.hbar);
            auto map = build_scalar_sw(p);
            Matrix gamma = Matrix::Identity(4, 4) * (0.9 + 0.4 * std::abs(unit(rng)));
            Matrix sigma = Matrix::Identity(4, 4) * (0.9 + 0.4 * std::abs(unit(rng)));
            const Matrix sinv = invert_sw(map).S;
            NCWignerFunction state(
                GaussianWigner(2, Vector::Zero(4), sinv * gamma * sinv.transpose()), map);
            worst = std::max(worst, std::abs(nc_fidelity_closed(state, sigma) -
                                             fidelity_gaussian(gamma, sigma)));
        }
        report("sw-invariance", worst, 1e-10, false);
    }

    // Protocol checks: witness dichotomy and ideal teleportation.
    {
        GaussianWigner a = GaussianWigner::standard(1);
        Vector m(2);
        m << 1.0, 0.0;
        auto w = no_cloning_witness(a, GaussianWigner::coherent(1, m));
        const bool contradiction = w.classification == OverlapClass::contradiction;
        report("witness-dichotomy", contradiction ? 0.0 : 1.0, 0.5, false);

        auto run = teleport_ideal_1d(a, std::nullopt, opt.seed);
        report("ideal-teleport-fidelity", std::abs(run.fidelity - 1.0), 1e-6, false);

        bool rejected = false;
        try {
            teleport_nc_2d(GaussianWigner::standard(2),
                           DeformationParams::scalar(opt.theta == 0.0 ? 0.2 : opt.theta, opt.eta,
                                                     opt.hbar),
                           Vector::Zero(4).eval(), opt.seed, NCObservableSet::naive);
        } catch (const protocol_error&) {
            rejected = true;
        }
        report("nc-observable-gate", rejected ? 0.0 : 1.0, 0.5, false);
    }

    const int rc = emit(table, opt.output, opt.format);
    if (rc != exit_ok) return rc;
    return failed ? exit_tolerance : exit_ok;
}

// ---------------------------------------------------------------------------
// teleport
// ---------------------------------------------------------------------------

struct TeleportOptions {
    std::string protocol = "ideal-1d";
    double r = 1.0;
    double theta = 0.2, eta = 0.1, hbar = 1.0;
    int runs = 100;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool naive = false;
    std::string output, format = "table";
};

int run_teleport(const TeleportOptions& opt) {
    if (!opt.seed_set && opt.protocol != "finite-r")
        throw CLI::ValidationError("teleport", "--seed is required for stochastic protocols");

    Table table;
    table.columns = {"protocol", "r", "outcomes", "fidelity", "seed"};
    double aggregate = 0.0;
    int counted = 0;

    auto add = [&](const TeleportationRun& run) {
        std::stringstream ss(run_record_row(run));
        std::vector<std::string> cells;
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        table.rows.push_back(cells);
        aggregate += run.fidelity;
        ++counted;
    };

    if (opt.protocol == "ideal-1d") {
        GaussianWigner in = GaussianWigner::standard(1);
        for (int k = 0; k < opt.runs; ++k)
            add(teleport_ideal_1d(in, std::nullopt, opt.seed + static_cast<std::uint64_t>(k)));
    } else if (opt.protocol == "finite-r") {
        GaussianWigner in = GaussianWigner::standard(1);
        add(teleport_finite_r(in, opt.r));
    } else if (opt.protocol == "nc-2d") {
        auto params = DeformationParams::scalar(opt.theta, opt.eta, opt.hbar);
        GaussianWigner in = GaussianWigner::standard(2);
        const auto set = opt.naive ? NCObservableSet::naive : NCObservableSet::canonical;
        for (int k = 0; k < opt.runs; ++k)
            add(teleport_nc_2d(in, params, std::nullopt, opt.seed + static_cast<std::uint64_t>(k),
                               set));
    } else {
        throw CLI::ValidationError("teleport", "unknown protocol: " + opt.protocol);
    }

    table.rows.push_back({"aggregate", "", "", fmt(aggregate / std::max(1, counted)), ""});
    return emit(table, opt.output, opt.format);
}

// ---------------------------------------------------------------------------
// ho
// ---------------------------------------------------------------------------

struct HoOptions {
    double theta = 0.0, eta = 0.0, hbar = 1.0;
    double lambda = 0.0;
    int n1 = 2, n2 = 2;
    int cap = 3;
    int grid_points = 32;
    std::string output, format = "table";
    std::string save_grid_path;  // writes the (n1, n2) caps' state with its parameter header
};

int run_ho(const HoOptions& opt) {
    if (opt.n1 > HOWignerState::max_index || opt.n2 > HOWignerState::max_index || opt.cap > 2 * HOWignerState::max_index)
        throw CLI::ValidationError("ho", "index cap exceeded");
    auto params = DeformationParams::scalar(opt.theta, opt.eta, opt.hbar);
    auto map = opt.lambda > 0.0 ? build_scalar_sw(params, opt.lambda) : build_scalar_sw(params);
    auto hop = ho_params(map);
    auto H = ho_hamiltonian(hop);
    auto L = StarStructure::moyal(2, opt.hbar);

    Table table;
    table.columns = {"n1", "n2", "energy", "stargen_residual", "norm"};
    for (int n1 = 0; n1 <= opt.n1; ++n1) {
        for (int n2 = 0; n2 <= opt.n2; ++n2) {
            if (n1 + n2 > opt.cap) continue;
            HOWignerState w(n1, n2, hop);
            GridFunction grid = w.to_grid(w.default_axes(opt.grid_points));
            const double res = stargen_residual(H, grid, w.energy(), L);
            table.rows.push_back({std::to_string(n1), std::to_string(n2), fmt(w.energy()),
                                  fmt(res), fmt(grid.integral().real())});
            const bool last = n1 == opt.n1 && (n2 == opt.n2 || n1 + n2 == opt.cap);
            if (last && !opt.save_grid_path.empty()) {
                save_grid(grid, opt.save_grid_path,
                          {{"lambda", fmt(hop.lambda)},
                           {"mu", fmt(hop.mu)},
                           {"theta", fmt(hop.theta)},
                           {"eta", fmt(hop.eta)},
                           {"hbar", fmt(hop.hbar)},
                           {"n1", std::to_string(n1)},
                           {"n2", std::to_string(n2)}});
            }
        }
    }
    return emit(table, opt.output, opt.format);
}

// ---------------------------------------------------------------------------
// star
// ---------------------------------------------------------------------------

struct StarOptions {
    double theta = 0.3, eta = 0.2, hbar = 1.0;
    int grid_points = 64;
    double extent = 6.0;
    std::string output, format = "table";
    std::string save_grid_path;
};

int run_star(const StarOptions& opt) {
    auto params = DeformationParams::scalar(opt.theta, opt.eta, opt.hbar);
    Table table;
    table.columns = {"check", "value"};

    // Coordinate commutators under the full deformed product.
    auto full = StarStructure::deformed(params);
    auto commutator = [&](int i, int j) {
        auto c = star_commutator(PhasePolynomial::coordinate(4, i),
                                 PhasePolynomial::coordinate(4, j), full);
        std::complex<double> v = 0.0;
        for (const auto& [e, coef] : c.terms()) v += coef;
        return v.imag();
    };
    table.rows.push_back({"[x1,x2]/i", fmt(commutator(0, 1))});
    table.rows.push_back({"[p1,p2]/i", fmt(commutator(2, 3))});
    table.rows.push_back({"[x1,p1]/i", fmt(commutator(0, 2))});
    table.rows.push_back({"[x1,p2]/i", fmt(commutator(0, 3))});

    // Engine agreement on a one-mode Gaussian pair.
    auto L = StarStructure::moyal(1, opt.hbar);
    std::vector<GridAxis> axes{{-opt.extent, opt.extent, opt.grid_points},
                               {-opt.extent, opt.extent, opt.grid_points}};
    GridFunction a = GridFunction::sample(axes, [](const std::vector<double>& pt) {
        return std::complex<double>{std::exp(-0.6 * (pt[0] * pt[0] + pt[1] * pt[1])), 0.0};
    });
    GridFunction b = GridFunction::sample(axes, [](const std::vector<double>& pt) {
        const double dx = pt[0] - 0.4;
        return std::complex<double>{std::exp(-0.5 * (dx * dx + pt[1] * pt[1])), 0.0};
    });
    GridFunction k = star_grid_kernel(a, b, L);
    GridFunction f = star_grid_fourier(a, b, L);
    double diff = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) diff = std::max(diff, std::abs(k[i] - f[i]));
    table.rows.push_back({"kernel-vs-fourier", fmt(diff / k.max_abs())});

    auto rep = verify_integral_theorem(a, b, L, GridStarEngine::fourier);
    table.rows.push_back({"integral-theorem-rel", fmt(rep.difference / std::abs(rep.rhs))});

    if (!opt.save_grid_path.empty()) {
        save_grid(f, opt.save_grid_path,
                  {{"kind", "star-product"}, {"hbar", fmt(opt.hbar)}});
        table.rows.push_back({"saved", opt.save_grid_path});
    }
    return emit(table, opt.output, opt.format);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ncphase: phase-space noncommutative quantum mechanics toolkit"};
    app.require_subcommand(1);
    // Config file keys live in sections named after the subcommand, e.g.
    //   [fidelity]
    //   r=0,0.5,1
    // Command-line flags override config values.
    app.set_config("--config");

    FidelityOptions fo;
    auto* fid = app.add_subcommand("fidelity", "entanglement fidelity sweeps (closed vs grid)");
    fid->add_option("--r", fo.r_values, "comma list of squeezing values")
        ->delimiter(',')
        ->expected(0, 64);
    fid->add_option("--theta", fo.theta_values, "comma list of theta values (NC rows)")
        ->delimiter(',')
        ->expected(0, 64);
    fid->add_option("--eta", fo.eta_values, "comma list of eta values (NC rows)")
        ->delimiter(',')
        ->expected(0, 64);
    fid->add_option("--hbar", fo.hbar);
    fid->add_option("--lambda", fo.lambda, "SW map split (0 = symmetric)");
    fid->add_option("--grid-points", fo.grid_points);
    fid->add_option("--tolerance", fo.tolerance);
    fid->add_option("--output", fo.output);
    fid->add_option("--format", fo.format)->check(CLI::IsMember({"table", "json-like"}));

    VerifyOptions vo;
    auto* ver = app.add_subcommand("verify", "run the invariant suite");
    ver->add_option("--theta", vo.theta);
    ver->add_option("--eta", vo.eta);
    ver->add_option("--hbar", vo.hbar);
    ver->add_option("--grid-points", vo.grid_points);
    ver->add_option("--seed", vo.seed);
    ver->add_option("--output", vo.output);
    ver->add_option("--format", vo.format)->check(CLI::IsMember({"table", "json-like"}));

    TeleportOptions to;
    auto* tel = app.add_subcommand("teleport", "teleportation run records");
    tel->add_option("--protocol", to.protocol)
        ->check(CLI::IsMember({"ideal-1d", "finite-r", "nc-2d"}));
    tel->add_option("--r", to.r);
    tel->add_option("--theta", to.theta);
    tel->add_option("--eta", to.eta);
    tel->add_option("--hbar", to.hbar);
    tel->add_option("--runs", to.runs)->check(CLI::PositiveNumber);
    auto* seed_opt = tel->add_option("--seed", to.seed);
    tel->add_flag("--naive-observables", to.naive,
                  "request the non-commuting observable set (rejected by the gate)");
    tel->add_option("--output", to.output);
    tel->add_option("--format", to.format)->check(CLI::IsMember({"table", "json-like"}));

    HoOptions ho;
    auto* hos = app.add_subcommand("ho", "deformed harmonic oscillator table");
    hos->add_option("--theta", ho.theta);
    hos->add_option("--eta", ho.eta);
    hos->add_option("--hbar", ho.hbar);
    hos->add_option("--lambda", ho.lambda);
    hos->add_option("--n1", ho.n1, "max first index");
    hos->add_option("--n2", ho.n2, "max second index");
    hos->add_option("--cap", ho.cap, "max n1+n2");
    hos->add_option("--grid-points", ho.grid_points);
    hos->add_option("--save-grid", ho.save_grid_path,
                    "write the last state's grid with its parameter header (.ncg)");
    hos->add_option("--output", ho.output);
    hos->add_option("--format", ho.format)->check(CLI::IsMember({"table", "json-like"}));

    StarOptions so;
    auto* sta = app.add_subcommand("star", "star-product engine cross checks");
    sta->add_option("--theta", so.theta);
    sta->add_option("--eta", so.eta);
    sta->add_option("--hbar", so.hbar);
    sta->add_option("--grid-points", so.grid_points);
    sta->add_option("--extent", so.extent);
    sta->add_option("--save-grid", so.save_grid_path, "write the product grid (.ncg)");
    sta->add_option("--output", so.output);
    sta->add_option("--format", so.format)->check(CLI::IsMember({"table", "json-like"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try {
        to.seed_set = seed_opt->count() > 0;
        if (fid->parsed()) return run_fidelity(fo);
        if (ver->parsed()) return run_verify(vo);
        if (tel->parsed()) return run_teleport(to);
        if (hos->parsed()) return run_ho(ho);
        if (sta->parsed()) return run_star(so);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const protocol_error& e) {
        std::cerr << "protocol error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::runtime_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_config;
}
