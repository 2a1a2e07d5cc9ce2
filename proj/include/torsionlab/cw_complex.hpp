#pragma once

// Twisted chain complexes of finite CW complexes, combinatorial Laplacians
// and the zeta-regularized (modified Franz-Reidemeister) torsion.
//
// A p-cell s has boundary sum_k sign_k [target_k] g_k with g_k in the deck
// group, composed as in a right C[Gamma]-module: the boundary of [b] g is
// (boundary of [b]) g. Tensoring with rho puts sign_k rho(g_k) in block
// (target_k, s) of the twisted boundary B_p, so that B_{p-1} B_p = 0 for any
// representation of the deck group.
//
// Complex file format:
//
//   gens t;                                    # optional deck generators
//   cells p count;                             # one line per degree
//   bd p cell_index -> (sign, word, target_index)*;
//
// Cell indices are 0-based; the empty word is written `1`.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "torsionlab/detail/lexer.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/free_group.hpp"
#include "torsionlab/presentation.hpp"
#include "torsionlab/unitary_rep.hpp"

namespace torsionlab {

struct Incidence {
    int target = 0;
    int sign = 1;
    Word word;

    friend bool operator==(const Incidence&, const Incidence&) = default;
};

struct TwistedCWComplex {
    std::vector<std::string> generator_names;
    /// gamma_p for p = 0 .. top degree.
    std::vector<int> cells_per_degree;
    /// incidences[p][source cell] lists the boundary records of a p-cell;
    /// incidences[0] is empty.
    std::vector<std::vector<std::vector<Incidence>>> incidences;

    int top_degree() const { return static_cast<int>(cells_per_degree.size()) - 1; }

    int cells(int p) const {
        if (p < 0 || p > top_degree()) return 0;
        return cells_per_degree[static_cast<std::size_t>(p)];
    }
};

/// Integer boundary matrix after sending every deck-group word to 1.
inline Eigen::MatrixXi augmented_boundary(const TwistedCWComplex& cx, int p) {
    Eigen::MatrixXi out = Eigen::MatrixXi::Zero(cx.cells(p - 1), cx.cells(p));
    if (p < 1 || p > cx.top_degree()) return out;
    const auto& inc = cx.incidences[static_cast<std::size_t>(p)];
    for (int s = 0; s < cx.cells(p); ++s)
        for (const auto& rec : inc[static_cast<std::size_t>(s)]) out(rec.target, s) += rec.sign;
    return out;
}

/// Structural checks plus exact integer d d = 0 on the augmented complex.
inline void validate_complex(const TwistedCWComplex& cx) {
    if (cx.cells_per_degree.empty()) throw DomainError("complex has no cells");
    if (cx.incidences.size() != cx.cells_per_degree.size()) throw DomainError("incidence table does not match degrees");
    for (int p = 0; p <= cx.top_degree(); ++p) {
        if (cx.cells(p) < 0) throw DomainError("negative cell count");
        const auto& inc = cx.incidences[static_cast<std::size_t>(p)];
        if (static_cast<int>(inc.size()) != (p == 0 ? 0 : cx.cells(p)))
            throw DomainError("incidence table size does not match cell count in degree " + std::to_string(p));
        for (const auto& cell : inc)
            for (const auto& rec : cell) {
                if (rec.target < 0 || rec.target >= cx.cells(p - 1))
                    throw DomainError("boundary target out of range in degree " + std::to_string(p));
                if (rec.sign != 1 && rec.sign != -1) throw DomainError("incidence sign must be +1 or -1");
                if (rec.word.generator_bound() > static_cast<int>(cx.generator_names.size()))
                    throw DomainError("incidence word uses an undeclared generator");
            }
    }
    for (int p = 2; p <= cx.top_degree(); ++p) {
        const Eigen::MatrixXi dd = augmented_boundary(cx, p - 1) * augmented_boundary(cx, p);
        if (dd.size() > 0 && dd.cwiseAbs().maxCoeff() != 0)
            throw DomainError("augmented boundary does not square to zero in degree " + std::to_string(p));
    }
}

/// B_p : C_p -> C_{p-1}, size (gamma_{p-1} r) x (gamma_p r).
inline Eigen::MatrixXcd twisted_boundary(const TwistedCWComplex& cx, const UnitaryRep& rep, int p) {
    if (p < 1) throw DomainError("boundary degree must be at least 1");
    const int r = rep.rank;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cx.cells(p - 1) * r, cx.cells(p) * r);
    if (p > cx.top_degree()) return out;
    const auto& inc = cx.incidences[static_cast<std::size_t>(p)];
    for (int s = 0; s < cx.cells(p); ++s)
        for (const auto& rec : inc[static_cast<std::size_t>(s)])
            out.block(rec.target * r, s * r, r, r) += static_cast<double>(rec.sign) * rep.evaluate(rec.word);
    return out;
}

/// max_p ||B_{p-1} B_p||; zero up to rounding when rep satisfies the relations.
inline double twisted_chain_defect(const TwistedCWComplex& cx, const UnitaryRep& rep) {
    double worst = 0.0;
    for (int p = 2; p <= cx.top_degree(); ++p) {
        const Eigen::MatrixXcd dd = twisted_boundary(cx, rep, p - 1) * twisted_boundary(cx, rep, p);
        if (dd.size() > 0) worst = std::max(worst, dd.cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Delta^p = B_p^* B_p + B_{p+1} B_{p+1}^* on C_p.
inline Eigen::MatrixXcd comb_laplacian(const TwistedCWComplex& cx, const UnitaryRep& rep, int p) {
    const int dim = cx.cells(p) * rep.rank;
    Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(dim, dim);
    if (p >= 1) {
        const Eigen::MatrixXcd b = twisted_boundary(cx, rep, p);
        lap += b.adjoint() * b;
    }
    const Eigen::MatrixXcd up = twisted_boundary(cx, rep, p + 1);
    lap += up * up.adjoint();
    return lap;
}

struct TorsionReport {
    std::vector<int> betti;
    double log_torsion = 0.0;
    double torsion = 1.0;
    /// Ascending eigenvalues of Delta^p, one list per degree.
    std::vector<std::vector<double>> spectra;
};

/// Eigenvalues below this (times 1 + the largest eigenvalue of the degree) count as kernel.
inline constexpr double kZeroEigenvalueTolerance = 1e-8;

/// Spectra, twisted Betti numbers and tau* = exp(-zeta'_comb(0) / 2).
///
/// zeta_comb(s) = sum_p (-1)^p p sum_{lambda > 0} lambda^{-s}, so
/// -zeta'_comb(0) / 2 = (1/2) sum_p (-1)^p p sum_{lambda > 0} log lambda.
inline TorsionReport torsion_report(const TwistedCWComplex& cx, const UnitaryRep& rep) {
    rep.validate_images(static_cast<int>(cx.generator_names.size()));
    TorsionReport rpt;
    double log_t = 0.0;
    for (int p = 0; p <= cx.top_degree(); ++p) {
        const Eigen::MatrixXcd lap = comb_laplacian(cx, rep, p);
        std::vector<double> spec;
        if (lap.rows() > 0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lap, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success)
                throw EigenSolverError("Hermitian eigensolver failed in degree " + std::to_string(p));
            const auto& ev = es.eigenvalues();
            spec.assign(ev.data(), ev.data() + ev.size());
            std::sort(spec.begin(), spec.end());
        }
        const double top = spec.empty() ? 0.0 : spec.back();
        const double zero_tol = kZeroEigenvalueTolerance * (1.0 + top);
        int kernel = 0;
        double log_sum = 0.0;
        for (double lambda : spec) {
            if (lambda < zero_tol)
                ++kernel;
            else
                log_sum += std::log(lambda);
        }
        log_t += (p % 2 == 0 ? 1.0 : -1.0) * p * log_sum;
        rpt.betti.push_back(kernel);
        rpt.spectra.push_back(std::move(spec));
    }
    rpt.log_torsion = 0.5 * log_t;
    rpt.torsion = std::exp(rpt.log_torsion);
    return rpt;
}

inline int numerical_rank(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0;
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    const double tol = 1e-7 * std::max(1.0, sv(0));
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > tol) ++rank;
    return rank;
}

/// Twisted Betti numbers by rank-nullity on the boundary maps (no Laplacians).
inline std::vector<int> betti_by_rank(const TwistedCWComplex& cx, const UnitaryRep& rep) {
    std::vector<int> out;
    for (int p = 0; p <= cx.top_degree(); ++p) {
        const int dim = cx.cells(p) * rep.rank;
        const int rank_out = p >= 1 ? numerical_rank(twisted_boundary(cx, rep, p)) : 0;
        const int rank_in = numerical_rank(twisted_boundary(cx, rep, p + 1));
        out.push_back(dim - rank_out - rank_in);
    }
    return out;
}

/// Presentation 2-complex: one vertex, a 1-cell per generator with boundary
/// [P0] x_i - [P0], and a 2-cell per relator whose boundary on x_i is the
/// right Fox derivative d r_j / d x_i, expanded into unit-sign records.
inline TwistedCWComplex knot_complex(const Presentation& pres) {
    const int n = pres.n_generators();
    const int m = static_cast<int>(pres.relators.size());
    if (m != n - 1) throw DomainError("knot complex needs a deficiency-one presentation");
    for (int d : pres.abelianization_degrees)
        if (d != 1) throw DomainError("knot complex needs a Wirtinger-type presentation (all degrees 1)");

    TwistedCWComplex cx;
    cx.generator_names = pres.generator_names;
    cx.cells_per_degree = {1, n};
    cx.incidences.resize(2);
    for (int i = 0; i < n; ++i)
        cx.incidences[1].push_back({Incidence{0, 1, Word::generator(i)}, Incidence{0, -1, Word{}}});
    if (m > 0) {
        cx.cells_per_degree.push_back(m);
        cx.incidences.emplace_back();
        for (const auto& rel : pres.relators) {
            std::vector<Incidence> bd;
            for (int i = 0; i < n; ++i) {
                const auto d = fox_derivative_right(rel, i);
                for (const auto& [w, c] : d.terms()) {
                    const double k = c.real();
                    if (c.imag() != 0.0 || k != std::round(k)) throw DomainError("non-integer Fox coefficient");
                    const int copies = static_cast<int>(std::lround(std::abs(k)));
                    for (int q = 0; q < copies; ++q) bd.push_back(Incidence{i, k > 0 ? 1 : -1, w});
                }
            }
            cx.incidences[2].push_back(std::move(bd));
        }
    }
    validate_complex(cx);
    return cx;
}

/// Circle with one vertex and one edge whose boundary is [v] t - [v].
inline TwistedCWComplex circle_complex() {
    TwistedCWComplex cx;
    cx.generator_names = {"t"};
    cx.cells_per_degree = {1, 1};
    cx.incidences = {{}, {{Incidence{0, 1, Word::generator(0)}, Incidence{0, -1, Word{}}}}};
    return cx;
}

inline TwistedCWComplex parse_complex(const std::string& text) {
    detail::TokenStream ts(detail::tokenize(text));
    TwistedCWComplex cx;
    if (ts.peek().is_keyword("gens")) {
        ts.next();
        while (ts.peek().kind == detail::Token::Kind::identifier) cx.generator_names.push_back(ts.next().text);
        ts.expect(";");
    }

    std::vector<long> counts;
    std::vector<bool> declared;
    struct PendingBd {
        int degree;
        int cell;
        Incidence rec;
        int line;
        int column;
    };
    std::vector<PendingBd> pending;

    while (!ts.at_end()) {
        const auto kw = ts.peek();
        if (kw.is_keyword("cells")) {
            ts.next();
            const long p = ts.expect_integer();
            const long count = ts.expect_integer();
            ts.expect(";");
            if (p < 0 || count < 0) throw ParseError("cell degree and count must be nonnegative", kw.line, kw.column);
            if (static_cast<std::size_t>(p) >= counts.size()) {
                counts.resize(static_cast<std::size_t>(p) + 1, 0);
                declared.resize(static_cast<std::size_t>(p) + 1, false);
            }
            if (declared[static_cast<std::size_t>(p)]) throw ParseError("degree declared twice", kw.line, kw.column);
            declared[static_cast<std::size_t>(p)] = true;
            counts[static_cast<std::size_t>(p)] = count;
        } else if (kw.is_keyword("bd")) {
            ts.next();
            const int p = static_cast<int>(ts.expect_integer());
            const int cell = static_cast<int>(ts.expect_integer());
            ts.expect("->");
            while (ts.accept("(")) {
                const auto at = ts.peek();
                const long sign = ts.expect_integer();
                ts.expect(",");
                Word w = detail::parse_word(ts, cx.generator_names);
                ts.expect(",");
                const int target = static_cast<int>(ts.expect_integer());
                ts.expect(")");
                if (sign != 1 && sign != -1) throw ParseError("sign must be +1 or -1", at.line, at.column);
                pending.push_back({p, cell, Incidence{target, static_cast<int>(sign), std::move(w)}, at.line, at.column});
            }
            ts.expect(";");
        } else {
            ts.fail("expected 'cells' or 'bd'");
        }
    }

    if (counts.empty()) throw ParseError("no 'cells' declarations");
    for (std::size_t p = 0; p < declared.size(); ++p)
        if (!declared[p]) throw ParseError("degrees must be contiguous from 0; degree " + std::to_string(p) + " missing");

    for (long c : counts) cx.cells_per_degree.push_back(static_cast<int>(c));
    cx.incidences.resize(counts.size());
    for (std::size_t p = 1; p < counts.size(); ++p) cx.incidences[p].resize(static_cast<std::size_t>(counts[p]));
    for (auto& b : pending) {
        if (b.degree < 1 || b.degree > cx.top_degree() || b.cell < 0 || b.cell >= cx.cells(b.degree))
            throw ParseError("boundary record for a nonexistent cell", b.line, b.column);
        if (b.rec.target < 0 || b.rec.target >= cx.cells(b.degree - 1))
            throw ParseError("boundary target out of range", b.line, b.column);
        cx.incidences[static_cast<std::size_t>(b.degree)][static_cast<std::size_t>(b.cell)].push_back(std::move(b.rec));
    }
    validate_complex(cx);
    return cx;
}

inline std::string serialize_complex(const TwistedCWComplex& cx) {
    std::ostringstream os;
    if (!cx.generator_names.empty()) {
        os << "gens";
        for (const auto& g : cx.generator_names) os << ' ' << g;
        os << ";\n";
    }
    for (int p = 0; p <= cx.top_degree(); ++p) os << "cells " << p << ' ' << cx.cells(p) << ";\n";
    for (int p = 1; p <= cx.top_degree(); ++p)
        for (int s = 0; s < cx.cells(p); ++s) {
            const auto& recs = cx.incidences[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
            if (recs.empty()) continue;
            os << "bd " << p << ' ' << s << " ->";
            for (const auto& rec : recs)
                os << " (" << (rec.sign > 0 ? "+1" : "-1") << ", " << format_word(rec.word, cx.generator_names) << ", "
                   << rec.target << ')';
            os << ";\n";
        }
    return os.str();
}

} // namespace torsionlab
