#pragma once

// Length spectra and the truncated Euler product
//
//   R(z, rho) = prod_gamma det(I - rho(gamma) e^{-z l(gamma)})^{-1}
//
// over prime closed geodesics, absolutely convergent for Re z > 2.
//
// Spectrum file format:
//
//   rank r;
//   geo <length> ; <r*r entries as re,im pairs, row-major> ;

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "torsionlab/detail/lexer.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/unitary_rep.hpp"

namespace torsionlab {

struct GeodesicEntry {
    double length = 0.0;
    Eigen::MatrixXcd holonomy;
};

class LengthSpectrum {
public:
    explicit LengthSpectrum(int rank = 1) : rank_(rank) {
        if (rank < 1) throw DomainError("spectrum rank must be positive");
    }

    LengthSpectrum(int rank, std::vector<GeodesicEntry> entries) : LengthSpectrum(rank) {
        for (auto& e : entries) add(std::move(e));
    }

    /// Inserts keeping the entries sorted by length (stable for ties).
    void add(GeodesicEntry e) {
        if (!(e.length > 0.0) || !std::isfinite(e.length)) throw DomainError("geodesic length must be positive");
        if (e.holonomy.rows() != rank_ || e.holonomy.cols() != rank_) throw DomainError("holonomy has the wrong rank");
        const auto id = Eigen::MatrixXcd::Identity(rank_, rank_);
        if ((e.holonomy.adjoint() * e.holonomy - id).norm() > kUnitarityTolerance)
            throw DomainError("holonomy is not unitary");
        auto pos = std::upper_bound(entries_.begin(), entries_.end(), e.length,
                                    [](double l, const GeodesicEntry& g) { return l < g.length; });
        entries_.insert(pos, std::move(e));
    }

    int rank() const { return rank_; }
    const std::vector<GeodesicEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    double max_length() const { return entries_.empty() ? 0.0 : entries_.back().length; }

private:
    int rank_;
    std::vector<GeodesicEntry> entries_;
};

/// Complex length l + i theta with 2 cosh((l + i theta) / 2) = +-tr, l > 0,
/// theta in (-pi, pi].
inline std::pair<double, double> complex_length_from_trace(cplx tr) {
    constexpr double kParabolicTolerance = 1e-12;
    if (std::abs(tr.imag()) <= kParabolicTolerance && std::abs(tr.real()) <= 2.0 + kParabolicTolerance)
        throw NotLoxodromic("trace lies in [-2, 2]: element is elliptic or parabolic");
    cplx w = 2.0 * std::acosh(tr / 2.0);
    if (w.real() < 0.0) w = -w;
    double theta = std::remainder(w.imag(), 2.0 * std::numbers::pi);
    if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
    return {w.real(), theta};
}

struct RuelleValue {
    cplx value = 1.0;
    /// Sum of per-factor log det(I - rho e^{-z l})^{-1} in ascending length.
    cplx log_value = 0.0;
    double tail_bound = 0.0;
    std::size_t entries_used = 0;
    std::vector<std::string> warnings;
};

/// -log det(I - U e^{-z l}) from the eigenvalues of U. Each term uses the
/// principal logarithm, which is exact while |mu e^{-z l}| < 1.
inline cplx log_euler_factor(const Eigen::MatrixXcd& holonomy, double length, cplx z, bool& outside_disc) {
    const cplx q = std::exp(-z * length);
    outside_disc = std::abs(q) >= 1.0;
    cplx acc = 0.0;
    if (holonomy.rows() == 1) {
        acc = std::log(1.0 - holonomy(0, 0) * q);
    } else {
        const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(holonomy, false);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) acc += std::log(1.0 - es.eigenvalues()(k) * q);
    }
    return -acc;
}

/// Euler product over entries with length <= cutoff.
///
/// tail_bound = sum over the remaining file entries of r q / (1 - q) with
/// q = e^{-Re(z) l}; it says nothing about geodesics beyond the file.
inline RuelleValue truncated_ruelle(const LengthSpectrum& spec, cplx z, double cutoff) {
    RuelleValue out;
    if (spec.empty()) {
        out.warnings.push_back("empty spectrum: value is the empty product");
        return out;
    }
    if (z.real() <= 2.0) out.warnings.push_back("Re z <= 2: outside the region of absolute convergence");
    if (cutoff > spec.max_length()) out.warnings.push_back("cutoff exceeds the longest geodesic in the file");

    bool flagged = false;
    for (const auto& g : spec.entries()) {
        if (g.length <= cutoff) {
            bool outside = false;
            out.log_value += log_euler_factor(g.holonomy, g.length, z, outside);
            flagged = flagged || outside;
            ++out.entries_used;
        } else {
            const double q = std::exp(-z.real() * g.length);
            out.tail_bound += q < 1.0 ? spec.rank() * q / (1.0 - q) : std::numeric_limits<double>::infinity();
        }
    }
    if (flagged) out.warnings.push_back("a factor has spectral radius >= 1; logarithm branch not certified");
    out.value = std::exp(out.log_value);
    return out;
}

struct ConvergenceRow {
    double cutoff = 0.0;
    cplx log_value = 0.0;
    std::size_t entries_used = 0;
    /// log_value minus the previous row's (the first row's own value).
    cplx difference = 0.0;
};

/// Partial log-products at each cutoff, sorted ascending.
inline std::vector<ConvergenceRow> convergence_report(const LengthSpectrum& spec, cplx z, std::vector<double> cutoffs) {
    std::sort(cutoffs.begin(), cutoffs.end());
    std::vector<ConvergenceRow> rows;
    cplx prev = 0.0;
    for (double c : cutoffs) {
        const RuelleValue v = truncated_ruelle(spec, z, c);
        rows.push_back({c, v.log_value, v.entries_used, v.log_value - prev});
        prev = v.log_value;
    }
    return rows;
}

inline LengthSpectrum parse_spectrum(const std::string& text) {
    detail::TokenStream ts(detail::tokenize(text));
    ts.expect_keyword("rank");
    const long rank = ts.expect_integer();
    if (rank < 1) throw ParseError("rank must be positive");
    ts.expect(";");
    LengthSpectrum spec(static_cast<int>(rank));
    while (!ts.at_end()) {
        const auto kw = ts.peek();
        ts.expect_keyword("geo");
        const double length = ts.expect_number();
        ts.expect(";");
        Eigen::MatrixXcd m(rank, rank);
        for (long k = 0; k < rank * rank; ++k) {
            const double re = ts.expect_number();
            ts.expect(",");
            const double im = ts.expect_number();
            m(k / rank, k % rank) = cplx(re, im);
        }
        ts.expect(";");
        try {
            spec.add(GeodesicEntry{length, std::move(m)});
        } catch (const DomainError& e) {
            throw ParseError(e.what(), kw.line, kw.column);
        }
    }
    return spec;
}

} // namespace torsionlab
