#pragma once

// Sampled phase-space functions on uniform rectangular grids.
//
// Axes are half-open periodic intervals [min, max) with power-of-two sample
// counts (the Fourier engines require it). Functions handled here must decay
// below ~1e-10 at the boundary, so trapezoid integration reduces to the plain
// Riemann sum and the implicit periodicity of the discrete transforms is
// harmless.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ncphase {

struct GridAxis {
    double min;
    double max;
    int count;

    double step() const { return (max - min) / count; }
    double length() const { return max - min; }
    double coordinate(int i) const { return min + i * step(); }

    // Signed DFT frequency for bin i (radians per unit coordinate).
    double frequency(int i) const {
        const int half = count / 2;
        const int k = i < half ? i : i - count;
        return 2.0 * std::numbers::pi * k / length();
    }

    bool operator==(const GridAxis& o) const {
        return min == o.min && max == o.max && count == o.count;
    }
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace detail {

inline int worker_count() {
    if (const char* env = std::getenv("NCPHASE_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 1) return std::min(n, 64);
    }
    return 1;
}

// Runs f(begin, end) over [0, total) partitioned across the configured
// worker count. Each point is written by exactly one worker, so results are
// identical to the sequential order.
template <typename F>
void parallel_for(std::size_t total, F&& f) {
    const int workers = worker_count();
    if (workers <= 1 || total < 4096) {
        f(std::size_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = std::min(total, w * chunk);
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo < hi) pool.emplace_back([&f, lo, hi] { f(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace detail

class GridFunction {
public:
    using Complex = std::complex<double>;

    explicit GridFunction(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
        if (axes_.empty()) throw std::invalid_argument("grid needs at least one axis");
        std::size_t total = 1;
        for (const auto& ax : axes_) {
            if (!(ax.max > ax.min)) throw std::invalid_argument("grid axis must have max > min");
            if (!is_power_of_two(ax.count))
                throw std::invalid_argument("grid axis counts must be powers of two");
            total *= static_cast<std::size_t>(ax.count);
        }
        samples_.assign(total, Complex{0.0});
    }

    template <typename F>
    static GridFunction sample(std::vector<GridAxis> axes, F&& f) {
        GridFunction g(std::move(axes));
        const int d = g.dimension();
        detail::parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
            std::vector<double> pt(d);
            std::vector<int> idx(d);
            for (std::size_t flat = lo; flat < hi; ++flat) {
                g.unflatten(flat, idx);
                for (int a = 0; a < d; ++a) pt[a] = g.axes_[a].coordinate(idx[a]);
                g.samples_[flat] = f(pt);
            }
        });
        return g;
    }

    int dimension() const { return static_cast<int>(axes_.size()); }
    const std::vector<GridAxis>& axes() const { return axes_; }
    const GridAxis& axis(int i) const { return axes_.at(i); }
    std::size_t size() const { return samples_.size(); }

    const Complex& operator[](std::size_t flat) const { return samples_[flat]; }
    Complex& operator[](std::size_t flat) { return samples_[flat]; }
    const std::vector<Complex>& samples() const { return samples_; }
    std::vector<Complex>& samples() { return samples_; }

    bool same_axes(const GridFunction& o) const { return axes_ == o.axes_; }

    std::size_t flatten(const std::vector<int>& idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < dimension(); ++a) flat = flat * axes_[a].count + idx[a];
        return flat;
    }

    void unflatten(std::size_t flat, std::vector<int>& idx) const {
        for (int a = dimension() - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % axes_[a].count);
            flat /= axes_[a].count;
        }
    }

    std::vector<double> point(std::size_t flat) const {
        std::vector<int> idx(dimension());
        unflatten(flat, idx);
        std::vector<double> pt(dimension());
        for (int a = 0; a < dimension(); ++a) pt[a] = axes_[a].coordinate(idx[a]);
        return pt;
    }

    double cell_volume() const {
        double v = 1.0;
        for (const auto& ax : axes_) v *= ax.step();
        return v;
    }

    // Trapezoid rule on the periodic extension (plain Riemann sum).
    Complex integral() const {
        Complex acc = 0.0;
        for (const auto& s : samples_) acc += s;
        return acc * cell_volume();
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& s : samples_) m = std::max(m, std::abs(s));
        return m;
    }

    // Largest magnitude over the boundary faces, used for decay diagnostics.
    double boundary_max_abs() const {
        double m = 0.0;
        std::vector<int> idx(dimension());
        for (std::size_t flat = 0; flat < size(); ++flat) {
            unflatten(flat, idx);
            bool edge = false;
            for (int a = 0; a < dimension(); ++a)
                if (idx[a] == 0 || idx[a] == axes_[a].count - 1) edge = true;
            if (edge) m = std::max(m, std::abs(samples_[flat]));
        }
        return m;
    }

    GridFunction& operator+=(const GridFunction& o) {
        check_axes(o);
        for (std::size_t i = 0; i < size(); ++i) samples_[i] += o.samples_[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        check_axes(o);
        for (std::size_t i = 0; i < size(); ++i) samples_[i] -= o.samples_[i];
        return *this;
    }
    GridFunction& operator*=(Complex s) {
        for (auto& v : samples_) v *= s;
        return *this;
    }

private:
    void check_axes(const GridFunction& o) const {
        if (!same_axes(o)) throw std::invalid_argument("grid mismatch");
    }

    std::vector<GridAxis> axes_;
    std::vector<Complex> samples_;
};

namespace detail {

// In-place multi-dimensional complex FFT (FFTW backend). sign = FFTW_FORWARD
// for e^{-i k x} accumulation, FFTW_BACKWARD for the unnormalised inverse.
inline void fft_in_place(GridFunction& g, int sign) {
    const int rank = g.dimension();
    std::vector<int> n(rank);
    for (int a = 0; a < rank; ++a) n[a] = g.axis(a).count;
    auto* data = reinterpret_cast<fftw_complex*>(g.samples().data());
    fftw_plan plan = fftw_plan_dft(rank, n.data(), data, data, sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw planning failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

} // namespace detail

// Ordinary convolution (f * g)(z) = Int f(z') g(z - z') dz' computed with
// FFTs on the common grid. The kernel g must be given on the same axes; its
// sample at coordinate 0 is looked up by index, so axes should bracket zero.
inline GridFunction grid_convolve(const GridFunction& f, const GridFunction& g) {
    if (!f.same_axes(g)) throw std::invalid_argument("grid_convolve: grid mismatch");
    const int d = f.dimension();
    // Rotate the kernel so that coordinate zero sits at index 0 per axis.
    GridFunction gs(f.axes());
    std::vector<int> idx(d), shifted(d);
    std::vector<int> zero_index(d);
    for (int a = 0; a < d; ++a) {
        const auto& ax = f.axis(a);
        const double pos = -ax.min / ax.step();
        const int zi = static_cast<int>(std::llround(pos));
        if (std::abs(pos - zi) > 1e-9 || zi < 0 || zi >= ax.count)
            throw std::invalid_argument("grid_convolve: axes must contain coordinate 0 on the lattice");
        zero_index[a] = zi;
    }
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        g.unflatten(flat, idx);
        for (int a = 0; a < d; ++a)
            shifted[a] = (idx[a] - zero_index[a] + f.axis(a).count) % f.axis(a).count;
        gs[gs.flatten(shifted)] = g[flat];
    }
    GridFunction fa = f;
    detail::fft_in_place(fa, FFTW_FORWARD);
    detail::fft_in_place(gs, FFTW_FORWARD);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= gs[i];
    detail::fft_in_place(fa, FFTW_BACKWARD);
    const double norm = f.cell_volume() / static_cast<double>(f.size());
    fa *= norm;
    return fa;
}

} // namespace ncphase
