#pragma once

// Exact multivariate phase-space polynomials with complex coefficients.
// Terms map exponent multi-indices to coefficients; zero coefficients are
// never stored. Degree and dimension caps keep the Bopp-series star product
// in its supported range.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace ncphase {

class PhasePolynomial {
public:
    using Exponents = std::vector<std::uint8_t>;
    using Coefficient = std::complex<double>;
    using TermMap = std::map<Exponents, Coefficient>;

    // Star-product operands are capped at degree 8; products of two capped
    // operands still need storage headroom.
    static constexpr int max_operand_degree = 8;
    static constexpr int max_degree = 16;
    static constexpr int max_dimension = 8;

    explicit PhasePolynomial(int dimension) : dim_(dimension) {
        if (dimension < 1 || dimension > max_dimension)
            throw std::invalid_argument("polynomial dimension out of range");
    }

    static PhasePolynomial constant(int dimension, Coefficient c) {
        PhasePolynomial p(dimension);
        p.add_term(Exponents(dimension, 0), c);
        return p;
    }

    static PhasePolynomial coordinate(int dimension, int axis, Coefficient scale = 1.0) {
        PhasePolynomial p(dimension);
        Exponents e(dimension, 0);
        e.at(axis) = 1;
        p.add_term(e, scale);
        return p;
    }

    int dimension() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total(e));
        return d;
    }

    void add_term(const Exponents& e, Coefficient c) {
        if (static_cast<int>(e.size()) != dim_)
            throw std::invalid_argument("exponent dimension mismatch");
        if (total(e) > max_degree) throw std::invalid_argument("polynomial degree exceeds cap");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0.0) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0.0) terms_.erase(it);
        }
    }

    Coefficient coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coefficient{0.0} : it->second;
    }

    PhasePolynomial& operator+=(const PhasePolynomial& o) {
        check_same_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    PhasePolynomial& operator-=(const PhasePolynomial& o) {
        check_same_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    PhasePolynomial& operator*=(Coefficient s) {
        if (s == 0.0) {
            terms_.clear();
        } else {
            for (auto& [e, c] : terms_) c *= s;
        }
        return *this;
    }

    friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
    friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
    friend PhasePolynomial operator*(PhasePolynomial a, Coefficient s) { return a *= s; }
    friend PhasePolynomial operator*(Coefficient s, PhasePolynomial a) { return a *= s; }

    friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
        a.check_same_dim(b);
        PhasePolynomial r(a.dim_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.dim_);
                for (int i = 0; i < a.dim_; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
                r.add_term(e, ca * cb);
            }
        return r;
    }

    PhasePolynomial derivative(int axis) const {
        PhasePolynomial r(dim_);
        for (const auto& [e, c] : terms_) {
            if (e.at(axis) == 0) continue;
            Exponents d = e;
            --d[axis];
            r.add_term(d, c * static_cast<double>(e[axis]));
        }
        return r;
    }

    PhasePolynomial conjugate() const {
        PhasePolynomial r(dim_);
        for (const auto& [e, c] : terms_) r.add_term(e, std::conj(c));
        return r;
    }

    Coefficient evaluate(std::span<const double> point) const {
        if (static_cast<int>(point.size()) != dim_)
            throw std::invalid_argument("evaluation point dimension mismatch");
        Coefficient total = 0.0;
        for (const auto& [e, c] : terms_) {
            double mono = 1.0;
            for (int i = 0; i < dim_; ++i)
                for (int k = 0; k < e[i]; ++k) mono *= point[i];
            total += c * mono;
        }
        return total;
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
        return m;
    }

    static int total(const Exponents& e) {
        int t = 0;
        for (auto v : e) t += v;
        return t;
    }

private:
    void check_same_dim(const PhasePolynomial& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    int dim_;
    TermMap terms_;
};

} // namespace ncphase
