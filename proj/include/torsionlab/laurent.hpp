#pragma once

// Laurent polynomials over C and matrices over Lambda = C[t, t^-1].

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "torsionlab/errors.hpp"

namespace torsionlab {

using cplx = std::complex<double>;

/// Coefficients with magnitude below this fraction of the largest one are dropped.
inline constexpr double kLaurentDropTolerance = 1e-12;

/// Interpolated determinant coefficients below this fraction of the a-priori
/// bound on |det| over the unit circle are treated as rounding noise.
inline constexpr double kDeterminantNoiseFloor = 1e-13;

/// Element of C[t, t^-1] stored densely from the lowest nonzero exponent.
///
/// The stored form is normalized after every operation: the first and last
/// coefficients are nonzero and the zero polynomial is the empty list with
/// lowest exponent 0. Two equal polynomials therefore compare equal with ==.
class LaurentPoly {
public:
    LaurentPoly() = default;

    LaurentPoly(int lowest_exponent, std::vector<cplx> coefficients)
        : lowest_(lowest_exponent), coeffs_(std::move(coefficients)) {
        normalize();
    }

    static LaurentPoly constant(cplx c) { return LaurentPoly(0, {c}); }
    static LaurentPoly monomial(cplx c, int exponent) { return LaurentPoly(exponent, {c}); }
    /// The variable t.
    static LaurentPoly t() { return monomial(1.0, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    int lowest_exponent() const { return lowest_; }
    /// Only meaningful for nonzero polynomials.
    int highest_exponent() const { return lowest_ + static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return coeffs_; }

    /// Coefficient of t^k (zero outside the stored range).
    cplx coefficient(int k) const {
        const int idx = k - lowest_;
        if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return 0.0;
        return coeffs_[static_cast<std::size_t>(idx)];
    }

    /// Euclidean norm of the coefficient vector.
    double coefficient_norm() const {
        double s = 0.0;
        for (const auto& c : coeffs_) s += std::norm(c);
        return std::sqrt(s);
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Evaluate at z != 0 by Horner's rule on the shifted polynomial.
    cplx operator()(cplx z) const {
        if (z == cplx(0.0)) throw DomainError("Laurent polynomial evaluated at t = 0");
        cplx acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc * std::pow(z, lowest_);
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, 1.0); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, -1.0); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return LaurentPoly(a.lowest_ + b.lowest_, std::move(out));
    }

    friend LaurentPoly operator*(cplx s, const LaurentPoly& p) {
        std::vector<cplx> out = p.coeffs_;
        for (auto& c : out) c *= s;
        return LaurentPoly(p.lowest_, std::move(out));
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, double sign) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return sign > 0 ? b : -b;
        const int lo = std::min(a.lowest_, b.lowest_);
        const int hi = std::max(a.highest_exponent(), b.highest_exponent());
        std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i + static_cast<std::size_t>(a.lowest_ - lo)] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
            out[i + static_cast<std::size_t>(b.lowest_ - lo)] += sign * b.coeffs_[i];
        return LaurentPoly(lo, std::move(out));
    }

    void normalize() {
        const double cutoff = kLaurentDropTolerance * max_abs_coefficient();
        for (auto& c : coeffs_)
            if (std::abs(c) <= cutoff || c == cplx(0.0)) c = 0.0;
        auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c != cplx(0.0); });
        if (first == coeffs_.end()) {
            coeffs_.clear();
            lowest_ = 0;
            return;
        }
        lowest_ += static_cast<int>(first - coeffs_.begin());
        coeffs_.erase(coeffs_.begin(), first);
        while (coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
    }

    int lowest_ = 0;
    std::vector<cplx> coeffs_;
};

enum class LaurentOp { add, sub, mul };

inline LaurentPoly lp_arith(const LaurentPoly& a, const LaurentPoly& b, LaurentOp op) {
    switch (op) {
    case LaurentOp::add: return a + b;
    case LaurentOp::sub: return a - b;
    case LaurentOp::mul: return a * b;
    }
    return {};
}

inline cplx lp_eval(const LaurentPoly& p, cplx z) { return p(z); }

/// Row-major matrix over Lambda.
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(int rows, int cols) : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols)) {
        if (rows < 0 || cols < 0) throw DomainError("negative matrix dimension");
    }
    LaurentMatrix(int rows, int cols, std::vector<LaurentPoly> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows < 0 || cols < 0 || entries_.size() != static_cast<std::size_t>(rows * cols))
            throw DomainError("LaurentMatrix entry count does not match rows x cols");
    }

    static LaurentMatrix identity(int n) {
        LaurentMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(1.0);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    LaurentPoly& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const LaurentPoly& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const std::vector<LaurentPoly>& entries() const { return entries_; }

    /// Copy `block` into this matrix with its top-left corner at (row, col).
    void set_block(int row, int col, const LaurentMatrix& block) {
        for (int i = 0; i < block.rows(); ++i)
            for (int j = 0; j < block.cols(); ++j) (*this)(row + i, col + j) = block(i, j);
    }

    LaurentMatrix block(int row, int col, int nrows, int ncols) const {
        LaurentMatrix out(nrows, ncols);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) out(i, j) = (*this)(row + i, col + j);
        return out;
    }

    /// Entrywise evaluation at t = z.
    Eigen::MatrixXcd evaluate(cplx z) const {
        Eigen::MatrixXcd out(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j)(z);
        return out;
    }

    /// Largest coefficient magnitude over all entries.
    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, e.max_abs_coefficient());
        return m;
    }

    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("LaurentMatrix product dimension mismatch");
        LaurentMatrix out(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<LaurentPoly> entries_;
};

namespace detail {

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace detail

/// Determinant over Lambda by evaluation and interpolation.
///
/// Each Leibniz term picks one entry per row, so the exponents of det(M) lie
/// in [sum of row minima, sum of row maxima]. The shifted determinant is a
/// polynomial of degree at most the spread D; it is sampled at N >= D + 1
/// roots of unity (N a power of two) and recovered with an inverse DFT.
inline LaurentPoly lmat_det(const LaurentMatrix& m) {
    if (!m.is_square()) throw DomainError("determinant of a non-square LaurentMatrix");
    const int n = m.rows();
    if (n == 0) return LaurentPoly::constant(1.0);

    long lo = 0;
    long hi = 0;
    double bound = 1.0;
    for (int i = 0; i < n; ++i) {
        int row_lo = 0;
        int row_hi = 0;
        bool any = false;
        double row_norm = 0.0;
        for (int j = 0; j < n; ++j) {
            const auto& e = m(i, j);
            if (e.is_zero()) continue;
            for (const auto& c : e.coefficients()) row_norm += std::abs(c);
            row_lo = any ? std::min(row_lo, e.lowest_exponent()) : e.lowest_exponent();
            row_hi = any ? std::max(row_hi, e.highest_exponent()) : e.highest_exponent();
            any = true;
        }
        if (!any) return {};
        bound *= row_norm;
        lo += row_lo;
        hi += row_hi;
    }

    const auto spread = static_cast<std::size_t>(hi - lo);
    const std::size_t samples = detail::next_power_of_two(spread + 1);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(samples);

    std::vector<cplx> values(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const cplx w = std::polar(1.0, step * static_cast<double>(k));
        const cplx det = Eigen::PartialPivLU<Eigen::MatrixXcd>(m.evaluate(w)).determinant();
        values[k] = det * std::pow(w, -static_cast<int>(lo));
    }

    std::vector<cplx> coeffs(spread + 1, 0.0);
    for (std::size_t j = 0; j <= spread; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < samples; ++k)
            acc += values[k] * std::polar(1.0, -step * static_cast<double>((j * k) % samples));
        coeffs[j] = acc / static_cast<double>(samples);
        if (std::abs(coeffs[j]) <= kDeterminantNoiseFloor * bound) coeffs[j] = 0.0;
    }
    return LaurentPoly(static_cast<int>(lo), std::move(coeffs));
}

} // namespace torsionlab
