#pragma once

// Star products parameterised by a real skew matrix Lambda:
//
//     (a *_L b)(chi) = a(chi) exp((i/2) <-d_r Lambda_rs d_s->) b(chi).
//
// Three evaluation routes are provided.
//
//  * star_poly: the Bopp-shift series on polynomials. It terminates exactly;
//    each monomial pair is expanded over "pairing assignments" m_e >= 0 on the
//    nonzero entries e = (r, s) of Lambda, contributing
//        prod_e ((i/2) L_e)^{m_e} / m_e! * d^{row(m)} a * d^{col(m)} b.
//
//  * star_grid_kernel: the literal kernel integral
//        (a *_L b)(chi) = 1/(pi^d |det L|) Int Int a(chi') b(chi'')
//                         exp(2i (chi-chi')^T L^{-1} (chi''-chi)) dchi' dchi''
//    evaluated as a quadratic-cost double Riemann sum (d = dim chi). Intended
//    as a slow reference for small two-axis grids.
//
//  * star_grid_fourier: the same product computed in frequency space, where
//    it becomes the twisted convolution
//        F[a*b](k) = (2pi)^-d Int F[a](k') F[b](k-k') exp(-(i/2) k'^T L k) dk',
//    plus star_poly_grid, the terminating Bopp series with FFT spectral
//    derivatives for polynomial-times-grid operands (any dimension; this is
//    the production path for 4-D stargenvalue work).
//
// The skew phase prevents reducing the twisted convolution to an ordinary
// one, so the generic grid-times-grid route is quadratic in the number of
// frequency pairs and is restricted to two-axis grids; the polynomial route
// costs O(M log M).

#include "ncphase/deformation.hpp"
#include "ncphase/grid.hpp"
#include "ncphase/linalg.hpp"
#include "ncphase/polynomial.hpp"

#include <complex>
#include <map>
#include <numbers>
#include <vector>

namespace ncphase {

struct StarStructure {
    Matrix lambda;

    int dimension() const { return static_cast<int>(lambda.rows()); }

    static StarStructure from_matrix(Matrix m) {
        if (m.rows() != m.cols()) throw std::invalid_argument("star structure must be square");
        if (!is_skew(m, 1e-14)) throw std::invalid_argument("star structure must be skew-symmetric");
        return StarStructure{std::move(m)};
    }

    static StarStructure zero(int dim) { return StarStructure{Matrix::Zero(dim, dim)}; }

    // hbar * J on 2*modes block-ordered coordinates: the canonical Moyal product.
    static StarStructure moyal(int modes, double hbar) {
        const Matrix id = Matrix::Identity(modes, modes);
        const Matrix z = Matrix::Zero(modes, modes);
        return StarStructure{hbar * assemble_blocks(z, id, -id, z)};
    }

    // hbar * Omega: the full deformed product in noncommutative variables.
    static StarStructure deformed(const DeformationParams& p) {
        return StarStructure{p.hbar * SymplecticData::from(p).Omega};
    }

    // Theta acting on configuration-space symbols (n coordinates).
    static StarStructure position_sector(const DeformationParams& p) { return StarStructure{p.Theta}; }

    // N acting on momentum-space symbols (n coordinates).
    static StarStructure momentum_sector(const DeformationParams& p) { return StarStructure{p.N}; }

    // Places an n-coordinate structure onto a subset of a larger coordinate
    // set, zero elsewhere; used when the theta/eta-only products act on full
    // phase-space symbols.
    static StarStructure embed(const StarStructure& sub, int full_dim, const std::vector<int>& coords) {
        if (static_cast<int>(coords.size()) != sub.dimension())
            throw std::invalid_argument("embed: coordinate subset size mismatch");
        Matrix m = Matrix::Zero(full_dim, full_dim);
        for (int i = 0; i < sub.dimension(); ++i)
            for (int j = 0; j < sub.dimension(); ++j) m(coords.at(i), coords.at(j)) = sub.lambda(i, j);
        return StarStructure{std::move(m)};
    }
};

namespace detail {

struct LambdaEntry {
    int r, s;
    double value;
};

inline std::vector<LambdaEntry> nonzero_entries(const Matrix& lambda) {
    std::vector<LambdaEntry> e;
    for (int r = 0; r < lambda.rows(); ++r)
        for (int s = 0; s < lambda.cols(); ++s)
            if (lambda(r, s) != 0.0) e.push_back({r, s, lambda(r, s)});
    return e;
}

// Falling factorial alpha! / (alpha - used)!.
inline double falling(const PhasePolynomial::Exponents& alpha, const std::vector<int>& used) {
    double f = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int k = 0; k < used[i]; ++k) f *= static_cast<double>(alpha[i] - k);
    return f;
}

} // namespace detail

inline PhasePolynomial star_poly(const PhasePolynomial& a, const PhasePolynomial& b,
                                 const StarStructure& L) {
    const int d = a.dimension();
    if (b.dimension() != d || L.dimension() != d)
        throw std::invalid_argument("star_poly: dimension mismatch");
    if (a.degree() > PhasePolynomial::max_operand_degree ||
        b.degree() > PhasePolynomial::max_operand_degree)
        throw std::invalid_argument("star_poly: operand degree exceeds the supported cap");
    const auto entries = detail::nonzero_entries(L.lambda);
    const std::complex<double> half_i{0.0, 0.5};

    PhasePolynomial out(d);
    std::vector<int> row(d), col(d);

    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            std::fill(row.begin(), row.end(), 0);
            std::fill(col.begin(), col.end(), 0);
            // Depth-first over assignment counts for each Lambda entry, bounded
            // by the remaining exponent budgets of the monomial pair.
            auto run = [&](auto&& self, std::size_t e, std::complex<double> scale) -> void {
                if (e == entries.size()) {
                    PhasePolynomial::Exponents mono(d);
                    for (int i = 0; i < d; ++i)
                        mono[i] = static_cast<std::uint8_t>(ea[i] - row[i] + eb[i] - col[i]);
                    out.add_term(mono, ca * cb * scale * detail::falling(ea, row) * detail::falling(eb, col));
                    return;
                }
                const auto& en = entries[e];
                self(self, e + 1, scale);
                std::complex<double> step = scale;
                int taken = 0;
                while (row[en.r] < ea[en.r] && col[en.s] < eb[en.s]) {
                    ++row[en.r];
                    ++col[en.s];
                    ++taken;
                    step *= half_i * en.value / static_cast<double>(taken);
                    self(self, e + 1, step);
                }
                row[en.r] -= taken;
                col[en.s] -= taken;
            };
            run(run, 0, {1.0, 0.0});
        }
    }
    return out;
}

inline PhasePolynomial star_commutator(const PhasePolynomial& a, const PhasePolynomial& b,
                                       const StarStructure& L) {
    return star_poly(a, b, L) - star_poly(b, a, L);
}

// ---------------------------------------------------------------------------
// Grid engines
// ---------------------------------------------------------------------------

inline constexpr int kernel_engine_max_points = 64;
inline constexpr int fourier_engine_max_points = 128;

namespace detail {

inline double pair_coupling(const StarStructure& L) {
    if (L.dimension() != 2) throw std::invalid_argument("grid star engines need two-axis grids");
    return L.lambda(0, 1);
}

} // namespace detail

// Literal kernel-integral evaluation (quadratic cost, small 2-axis grids).
inline GridFunction star_grid_kernel(const GridFunction& a, const GridFunction& b,
                                     const StarStructure& L) {
    if (!a.same_axes(b)) throw std::invalid_argument("star_grid_kernel: grid mismatch");
    const double w = detail::pair_coupling(L);
    if (w == 0.0) throw std::domain_error("star_grid_kernel: Lambda must be invertible");
    const int n0 = a.axis(0).count, n1 = a.axis(1).count;
    if (n0 > kernel_engine_max_points || n1 > kernel_engine_max_points)
        throw std::invalid_argument("star_grid_kernel: grid too large for the reference engine");

    const double d0 = a.axis(0).step(), d1 = a.axis(1).step();
    std::vector<double> x0(n0), x1(n1);
    for (int i = 0; i < n0; ++i) x0[i] = a.axis(0).coordinate(i);
    for (int i = 0; i < n1; ++i) x1[i] = a.axis(1).coordinate(i);

    using C = std::complex<double>;
    const C iu{0.0, 1.0};

    // Phase tables over lattice differences u = chi - chi':
    //   exp(2i u^T L^{-1} v) = exp((2i/w)(u_1 v_0 - u_0 v_1)).
    auto table = [&](int nu, double du, const std::vector<double>& xs, double sign) {
        std::vector<C> t(static_cast<std::size_t>(2 * nu - 1) * xs.size());
        for (int m = -(nu - 1); m <= nu - 1; ++m)
            for (std::size_t j = 0; j < xs.size(); ++j)
                t[static_cast<std::size_t>(m + nu - 1) * xs.size() + j] =
                    std::exp(iu * (sign * 2.0 / w) * (m * du) * xs[j]);
        return t;
    };
    // P[du1][j0] = exp(+(2i/w) u1 x0[j0]),  Q[du0][j1] = exp(-(2i/w) u0 x1[j1])
    const auto P = table(n1, d1, x0, +1.0);
    const auto Q = table(n0, d0, x1, -1.0);

    // S(u) = sum_{chi''} b(chi'') exp(2i u^T L^{-1} chi'')
    std::vector<C> T1(static_cast<std::size_t>(2 * n1 - 1) * n1);
    for (int du1 = -(n1 - 1); du1 <= n1 - 1; ++du1) {
        for (int j1 = 0; j1 < n1; ++j1) {
            C acc = 0.0;
            for (int j0 = 0; j0 < n0; ++j0)
                acc += b[static_cast<std::size_t>(j0) * n1 + j1] *
                       P[static_cast<std::size_t>(du1 + n1 - 1) * n0 + j0];
            T1[static_cast<std::size_t>(du1 + n1 - 1) * n1 + j1] = acc;
        }
    }
    std::vector<C> S(static_cast<std::size_t>(2 * n0 - 1) * (2 * n1 - 1));
    for (int du0 = -(n0 - 1); du0 <= n0 - 1; ++du0)
        for (int du1 = -(n1 - 1); du1 <= n1 - 1; ++du1) {
            C acc = 0.0;
            for (int j1 = 0; j1 < n1; ++j1)
                acc += T1[static_cast<std::size_t>(du1 + n1 - 1) * n1 + j1] *
                       Q[static_cast<std::size_t>(du0 + n0 - 1) * n1 + j1];
            S[static_cast<std::size_t>(du0 + n0 - 1) * (2 * n1 - 1) + (du1 + n1 - 1)] = acc;
        }

    // c(chi) = pref (d0 d1)^2 sum_{chi'} a(chi') S(chi-chi') exp(-2i u^T L^{-1} chi)
    const double pref = 1.0 / (std::numbers::pi * std::numbers::pi * w * w);
    const double quad = (d0 * d1) * (d0 * d1);
    GridFunction out(a.axes());
    for (int j0 = 0; j0 < n0; ++j0) {
        for (int j1 = 0; j1 < n1; ++j1) {
            C acc = 0.0;
            for (int jp0 = 0; jp0 < n0; ++jp0) {
                const int du0 = j0 - jp0;
                const C e1 = std::conj(Q[static_cast<std::size_t>(du0 + n0 - 1) * n1 + j1]);
                const std::size_t srow = static_cast<std::size_t>(du0 + n0 - 1) * (2 * n1 - 1);
                for (int jp1 = 0; jp1 < n1; ++jp1) {
                    const int du1 = j1 - jp1;
                    const C e0 = std::conj(P[static_cast<std::size_t>(du1 + n1 - 1) * n0 + j0]);
                    acc += a[static_cast<std::size_t>(jp0) * n1 + jp1] * S[srow + (du1 + n1 - 1)] * e0 * e1;
                }
            }
            out[static_cast<std::size_t>(j0) * n1 + j1] = pref * quad * acc;
        }
    }
    return out;
}

// Twisted convolution in frequency space (two-axis grids).
inline GridFunction star_grid_fourier(const GridFunction& a, const GridFunction& b,
                                      const StarStructure& L) {
    if (!a.same_axes(b)) throw std::invalid_argument("star_grid_fourier: grid mismatch");
    if (a.dimension() != 2)
        throw std::invalid_argument(
            "star_grid_fourier: grid-times-grid route supports two-axis grids; "
            "use the polynomial overload for higher dimension");
    if (L.dimension() != 2) throw std::invalid_argument("star_grid_fourier: dimension mismatch");
    const double w = L.lambda(0, 1);
    const int n0 = a.axis(0).count, n1 = a.axis(1).count;
    if (n0 > fourier_engine_max_points || n1 > fourier_engine_max_points)
        throw std::invalid_argument("star_grid_fourier: grid too large");

    GridFunction fa = a, fb = b;
    detail::fft_in_place(fa, FFTW_FORWARD);
    detail::fft_in_place(fb, FFTW_FORWARD);

    using C = std::complex<double>;
    const C iu{0.0, 1.0};

    std::vector<double> w0(n0), w1(n1);
    for (int i = 0; i < n0; ++i) w0[i] = a.axis(0).frequency(i);
    for (int i = 0; i < n1; ++i) w1[i] = a.axis(1).frequency(i);

    // phase(k', k) = exp(-(i/2) w (w'_0 w_1 - w'_1 w_0))
    std::vector<C> P0(static_cast<std::size_t>(n0) * n1), P1(static_cast<std::size_t>(n1) * n0);
    for (int kp0 = 0; kp0 < n0; ++kp0)
        for (int k1 = 0; k1 < n1; ++k1)
            P0[static_cast<std::size_t>(kp0) * n1 + k1] = std::exp(-iu * 0.5 * w * w0[kp0] * w1[k1]);
    for (int kp1 = 0; kp1 < n1; ++kp1)
        for (int k0 = 0; k0 < n0; ++k0)
            P1[static_cast<std::size_t>(kp1) * n0 + k0] = std::exp(iu * 0.5 * w * w1[kp1] * w0[k0]);

    auto signed_of = [](int i, int n) { return i < n / 2 ? i : i - n; };

    // Linear (non-circular) twisted convolution over signed frequencies; the
    // spectra of admissible inputs decay at the frequency box edge.
    GridFunction chat(a.axes());
    for (int k0 = 0; k0 < n0; ++k0) {
        const int s0 = signed_of(k0, n0);
        for (int k1 = 0; k1 < n1; ++k1) {
            const int s1 = signed_of(k1, n1);
            C acc = 0.0;
            for (int kp0 = 0; kp0 < n0; ++kp0) {
                const int d0 = s0 - signed_of(kp0, n0);
                if (d0 < -n0 / 2 || d0 >= n0 / 2) continue;
                const int u0 = d0 >= 0 ? d0 : d0 + n0;
                const C p0 = P0[static_cast<std::size_t>(kp0) * n1 + k1];
                const std::size_t arow = static_cast<std::size_t>(kp0) * n1;
                const std::size_t brow = static_cast<std::size_t>(u0) * n1;
                for (int kp1 = 0; kp1 < n1; ++kp1) {
                    const int d1 = s1 - signed_of(kp1, n1);
                    if (d1 < -n1 / 2 || d1 >= n1 / 2) continue;
                    const int u1 = d1 >= 0 ? d1 : d1 + n1;
                    acc += fa[arow + kp1] * fb[brow + u1] * p0 *
                           P1[static_cast<std::size_t>(kp1) * n0 + k0];
                }
            }
            chat[static_cast<std::size_t>(k0) * n1 + k1] = acc;
        }
    }
    detail::fft_in_place(chat, FFTW_BACKWARD);
    // One 1/N per axis from the inverse transform and one from the discrete
    // twisted convolution (Delta_omega Delta / (2 pi) = 1/N per axis each).
    const double n_total = static_cast<double>(n0) * n1;
    chat *= 1.0 / (n_total * n_total);
    return chat;
}

// Terminating Bopp series for polynomial-times-grid operands with spectral
// derivatives; works in any dimension at O(M log M).
inline GridFunction star_poly_grid(const PhasePolynomial& a, const GridFunction& b,
                                   const StarStructure& L) {
    const int d = b.dimension();
    if (a.dimension() != d || L.dimension() != d)
        throw std::invalid_argument("star_poly_grid: dimension mismatch");
    const auto entries = detail::nonzero_entries(L.lambda);
    const std::complex<double> half_i{0.0, 0.5};

    // Collect nu -> Q_nu with (a *_L b) = sum_nu Q_nu(chi) (d^nu b)(chi).
    std::map<std::vector<int>, PhasePolynomial> pieces;
    std::vector<int> col(d, 0);
    auto add_piece = [&](const PhasePolynomial& q) {
        auto it = pieces.find(col);
        if (it == pieces.end())
            pieces.emplace(col, q);
        else
            it->second += q;
    };
    auto run = [&](auto&& self, std::size_t e, const PhasePolynomial& da,
                   std::complex<double> scale) -> void {
        if (e == entries.size()) {
            add_piece(da * scale);
            return;
        }
        const auto& en = entries[e];
        self(self, e + 1, da, scale);
        PhasePolynomial cur = da;
        std::complex<double> step = scale;
        int taken = 0;
        while (true) {
            cur = cur.derivative(en.r);
            if (cur.empty()) break;
            ++taken;
            step *= half_i * en.value / static_cast<double>(taken);
            ++col[en.s];
            self(self, e + 1, cur, step);
        }
        col[en.s] -= taken;
    };
    run(run, 0, a, {1.0, 0.0});

    GridFunction bhat = b;
    detail::fft_in_place(bhat, FFTW_FORWARD);

    // Per-axis coordinate and power tables for fast polynomial evaluation.
    std::vector<std::vector<double>> powers(d);
    int max_exp = 0;
    for (const auto& [nu, q] : pieces)
        for (const auto& [exps, c] : q.terms())
            for (int i = 0; i < d; ++i) max_exp = std::max(max_exp, static_cast<int>(exps[i]));
    for (int axis = 0; axis < d; ++axis) {
        const auto& ax = b.axis(axis);
        powers[axis].assign(static_cast<std::size_t>(ax.count) * (max_exp + 1), 1.0);
        for (int i = 0; i < ax.count; ++i) {
            const double x = ax.coordinate(i);
            for (int e = 1; e <= max_exp; ++e)
                powers[axis][static_cast<std::size_t>(i) * (max_exp + 1) + e] =
                    powers[axis][static_cast<std::size_t>(i) * (max_exp + 1) + e - 1] * x;
        }
    }

    bool b_real = true;
    for (std::size_t i = 0; i < b.size() && b_real; ++i)
        if (b[i].imag() != 0.0) b_real = false;

    std::vector<const std::map<std::vector<int>, PhasePolynomial>::value_type*> order;
    for (const auto& kv : pieces) order.push_back(&kv);

    GridFunction out(b.axes());
    GridFunction deriv(b.axes());
    const std::complex<double> iu{0.0, 1.0};
    std::vector<int> counts(d);
    for (int axis = 0; axis < d; ++axis) counts[axis] = b.axis(axis).count;

    // Hot loops track the multi-index incrementally instead of dividing the
    // flat index per point.
    auto advance = [&](std::vector<int>& idx) {
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < counts[a]) return;
            idx[a] = 0;
        }
    };

    // Per-axis tables of (i w)^nu_axis for a derivative multi-index.
    auto factor_tables = [&](const std::vector<int>& nu) {
        std::vector<std::vector<std::complex<double>>> tables(d);
        for (int axis = 0; axis < d; ++axis) {
            tables[axis].resize(counts[axis]);
            for (int i = 0; i < counts[axis]; ++i) {
                std::complex<double> f{1.0, 0.0};
                for (int k = 0; k < nu[axis]; ++k) f *= iu * b.axis(axis).frequency(i);
                tables[axis][i] = f;
            }
        }
        return tables;
    };

    enum class Slot { real, imag, full };
    auto accumulate = [&](const PhasePolynomial& q, Slot slot) {
        struct FastTerm {
            std::vector<std::uint8_t> exps;
            std::complex<double> coeff;
        };
        std::vector<FastTerm> terms;
        for (const auto& [exps, c] : q.terms()) terms.push_back({exps, c});
        detail::parallel_for(out.size(), [&](std::size_t lo, std::size_t hi) {
            std::vector<int> idx(d);
            out.unflatten(lo, idx);
            for (std::size_t flat = lo; flat < hi; ++flat, advance(idx)) {
                std::complex<double> val{0.0, 0.0};
                for (const auto& t : terms) {
                    double mono = 1.0;
                    for (int axis = 0; axis < d; ++axis)
                        mono *= powers[axis][static_cast<std::size_t>(idx[axis]) * (max_exp + 1) +
                                             t.exps[axis]];
                    val += t.coeff * mono;
                }
                if (slot == Slot::real)
                    out[flat] += val * deriv[flat].real();
                else if (slot == Slot::imag)
                    out[flat] += val * deriv[flat].imag();
                else
                    out[flat] += val * deriv[flat];
            }
        });
    };

    // For real b all derivative fields are real, so two of them ride in one
    // inverse transform (one in the real slot, one scaled by i); complex b
    // falls back to one transform per derivative.
    std::size_t piece_index = 0;
    while (piece_index < order.size()) {
        const auto* first = order[piece_index];
        const auto* second =
            (b_real && piece_index + 1 < order.size()) ? order[piece_index + 1] : nullptr;
        const auto tables1 = factor_tables(first->first);
        const auto tables2 = second ? factor_tables(second->first)
                                    : std::vector<std::vector<std::complex<double>>>{};
        detail::parallel_for(deriv.size(), [&](std::size_t lo, std::size_t hi) {
            std::vector<int> idx(d);
            deriv.unflatten(lo, idx);
            for (std::size_t flat = lo; flat < hi; ++flat, advance(idx)) {
                std::complex<double> f = tables1[0][idx[0]];
                for (int axis = 1; axis < d; ++axis) f *= tables1[axis][idx[axis]];
                if (second) {
                    std::complex<double> f2 = tables2[0][idx[0]];
                    for (int axis = 1; axis < d; ++axis) f2 *= tables2[axis][idx[axis]];
                    f += iu * f2;
                }
                deriv[flat] = bhat[flat] * f;
            }
        });
        detail::fft_in_place(deriv, FFTW_BACKWARD);
        deriv *= 1.0 / static_cast<double>(deriv.size());

        if (second) {
            accumulate(first->second, Slot::real);
            accumulate(second->second, Slot::imag);
            piece_index += 2;
        } else if (b_real) {
            accumulate(first->second, Slot::real);
            piece_index += 1;
        } else {
            accumulate(first->second, Slot::full);
            piece_index += 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification operations
// ---------------------------------------------------------------------------

enum class GridStarEngine { fourier, kernel };

struct IntegralTheoremReport {
    std::complex<double> lhs;  // Int a * b
    std::complex<double> rhs;  // Int a b
    double difference;         // |lhs - rhs|
};

inline IntegralTheoremReport verify_integral_theorem(const GridFunction& a, const GridFunction& b,
                                                     const StarStructure& L,
                                                     GridStarEngine engine = GridStarEngine::fourier) {
    GridFunction prod = engine == GridStarEngine::fourier ? star_grid_fourier(a, b, L)
                                                          : star_grid_kernel(a, b, L);
    std::complex<double> rhs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rhs += a[i] * b[i];
    rhs *= a.cell_volume();
    const std::complex<double> lhs = prod.integral();
    return {lhs, rhs, std::abs(lhs - rhs)};
}

inline IntegralTheoremReport verify_integral_theorem(const PhasePolynomial& a, const GridFunction& b,
                                                     const StarStructure& L) {
    GridFunction prod = star_poly_grid(a, b, L);
    std::complex<double> rhs = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) rhs += a.evaluate(b.point(i)) * b[i];
    rhs *= b.cell_volume();
    const std::complex<double> lhs = prod.integral();
    return {lhs, rhs, std::abs(lhs - rhs)};
}

// Max-norm residual of H * W - E W relative to max |W|.
inline double stargen_residual(const PhasePolynomial& H, const GridFunction& W, double E,
                               const StarStructure& L) {
    GridFunction hw = star_poly_grid(H, W, L);
    double num = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i) num = std::max(num, std::abs(hw[i] - E * W[i]));
    const double den = W.max_abs();
    return den == 0.0 ? 0.0 : num / den;
}

inline double stargen_residual(const GridFunction& H, const GridFunction& W, double E,
                               const StarStructure& L) {
    GridFunction hw = star_grid_fourier(H, W, L);
    double num = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i) num = std::max(num, std::abs(hw[i] - E * W[i]));
    const double den = W.max_abs();
    return den == 0.0 ? 0.0 : num / den;
}

} // namespace ncphase
