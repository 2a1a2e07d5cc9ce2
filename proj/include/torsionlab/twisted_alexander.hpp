#pragma once

// Twisted Alexander functions of knot groups and the special values they
// determine.
//
// With Phi = epsilon (x) rho : C[F_n] -> M_r(Lambda) the chain complex of the
// infinite cyclic cover of the presentation 2-complex is
//
//   (Lambda^r)^{n-1} --d2--> (Lambda^r)^n --d1--> Lambda^r
//
// with chains as row vectors and differentials acting from the right:
// d1 stacks the blocks Phi(x_i - 1), d2 has blocks Phi(d r_j / d x_i).
// Deleting the pivot block column p of d2 gives Delta_1; Delta_0 is
// det Phi(x_p - 1). For h^1 = 0, |Delta_1(1) / Delta_0(1)| is the torsion of
// the knot complement and its square is R(0, rho).

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "torsionlab/errors.hpp"
#include "torsionlab/free_group.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/presentation.hpp"
#include "torsionlab/unitary_rep.hpp"

namespace torsionlab {

/// |p(1)| must exceed this multiple of the coefficient norm to count as nonzero.
inline constexpr double kVanishingAtOneTolerance = 1e-9;
inline constexpr double kCuspidalSingularValueTolerance = 1e-9;

/// Phi(e) as an r x r matrix over Lambda: a word w maps to rho(w) t^{deg w}.
inline LaurentMatrix phi_apply(const GroupRingElement& e, const Presentation& pres, const UnitaryRep& rep) {
    const int r = rep.rank;
    std::map<int, Eigen::MatrixXcd> by_degree;
    for (const auto& [w, c] : e.terms()) {
        auto [it, inserted] = by_degree.try_emplace(pres.degree(w), Eigen::MatrixXcd::Zero(r, r));
        it->second += c * rep.evaluate(w);
    }
    LaurentMatrix out(r, r);
    if (by_degree.empty()) return out;
    const int lo = by_degree.begin()->first;
    const int hi = by_degree.rbegin()->first;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            std::vector<cplx> coeffs(static_cast<std::size_t>(hi - lo + 1), 0.0);
            for (const auto& [k, m] : by_degree) coeffs[static_cast<std::size_t>(k - lo)] = m(a, b);
            out(a, b) = LaurentPoly(lo, std::move(coeffs));
        }
    return out;
}

/// Block column of Phi(x_i - 1) = rho(x_i) t^{d_i} - I, size (n r) x r.
inline LaurentMatrix boundary1(const Presentation& pres, const UnitaryRep& rep) {
    const int r = rep.rank;
    const int n = pres.n_generators();
    LaurentMatrix out(n * r, r);
    for (int i = 0; i < n; ++i) {
        const auto e = GroupRingElement(Word::generator(i)) - GroupRingElement::one();
        out.set_block(i * r, 0, phi_apply(e, pres, rep));
    }
    return out;
}

/// Fox Jacobian under Phi, size (m r) x (n r) for m relators.
inline LaurentMatrix boundary2(const Presentation& pres, const UnitaryRep& rep) {
    const int r = rep.rank;
    const int n = pres.n_generators();
    const int m = static_cast<int>(pres.relators.size());
    LaurentMatrix out(m * r, n * r);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i)
            out.set_block(j * r, i * r, phi_apply(fox_derivative(pres.relators[static_cast<std::size_t>(j)], i), pres, rep));
    return out;
}

/// Delta_0 for pivot generator p (0-based): det(rho(x_p) t^{d_p} - I).
inline LaurentPoly delta0_for_pivot(const Presentation& pres, const UnitaryRep& rep, int pivot) {
    const auto e = GroupRingElement(Word::generator(pivot)) - GroupRingElement::one();
    return lmat_det(phi_apply(e, pres, rep));
}

/// Delta_1 for pivot generator p: determinant of d2 without block column p.
inline LaurentPoly delta1_for_pivot(const Presentation& pres, const UnitaryRep& rep, int pivot) {
    const int r = rep.rank;
    const int n = pres.n_generators();
    if (static_cast<int>(pres.relators.size()) != n - 1)
        throw DomainError("twisted Alexander function needs n - 1 relators for n generators");
    const LaurentMatrix d2 = boundary2(pres, rep);
    LaurentMatrix minor(d2.rows(), d2.cols() - r);
    for (int row = 0; row < d2.rows(); ++row) {
        int col_out = 0;
        for (int col = 0; col < d2.cols(); ++col) {
            if (col / r == pivot) continue;
            minor(row, col_out++) = d2(row, col);
        }
    }
    return lmat_det(minor);
}

/// Smallest generator index whose Delta_0 is not identically zero.
///
/// Tested by evaluating det(rho(x_j) t^{d_j} - I) at 8 pseudo-random points
/// on |t| = 2 (fixed seed, so the choice is reproducible). The caller deletes
/// this block column rather than renaming generators.
inline int choose_pivot(const Presentation& pres, const UnitaryRep& rep) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<cplx> points;
    for (int k = 0; k < 8; ++k) points.push_back(std::polar(2.0, angle(rng)));

    for (int j = 0; j < pres.n_generators(); ++j) {
        const auto e = GroupRingElement(Word::generator(j)) - GroupRingElement::one();
        const LaurentMatrix block = phi_apply(e, pres, rep);
        for (const cplx z : points) {
            const cplx det = Eigen::PartialPivLU<Eigen::MatrixXcd>(block.evaluate(z)).determinant();
            if (std::abs(det) > 1e-12) return j;
        }
    }
    throw NoPivot();
}

/// True iff rho(meridian) and rho(longitude) have no common fixed vector
/// other than 0, i.e. [rho(mu) - I; rho(lambda) - I] has full column rank.
inline bool cuspidality_check(const UnitaryRep& rep, const Presentation& pres) {
    if (!pres.has_peripheral()) throw MissingPeripheral();
    const int r = rep.rank;
    Eigen::MatrixXcd stacked(2 * r, r);
    stacked.topRows(r) = rep.evaluate(*pres.meridian) - Eigen::MatrixXcd::Identity(r, r);
    stacked.bottomRows(r) = rep.evaluate(*pres.longitude) - Eigen::MatrixXcd::Identity(r, r);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > kCuspidalSingularValueTolerance) ++rank;
    return rank == r;
}

struct TwistedAlexanderResult {
    LaurentPoly delta0;
    LaurentPoly delta1;
    /// 0-based generator index whose block column was deleted.
    int pivot_column = 0;
    /// Unset when the presentation has no peripheral words.
    std::optional<bool> cuspidal;
    /// Delta_1(1) != 0, equivalent to h^1 = h^2 = 0.
    bool h1_vanishes = false;
    cplx delta0_at_1 = 0.0;
    cplx delta1_at_1 = 0.0;
    /// |Delta_1(1) / Delta_0(1)|; set when h^1 vanishes and Delta_0(1) != 0.
    std::optional<double> torsion_at_1;
    /// torsion_at_1 squared; withheld for non-cuspidal representations.
    std::optional<double> ruelle_at_0;
    std::vector<std::string> warnings;
};

inline bool nonzero_at_one(const LaurentPoly& p) {
    return !p.is_zero() && std::abs(p(1.0)) > kVanishingAtOneTolerance * p.coefficient_norm();
}

inline TwistedAlexanderResult twisted_alexander(const Presentation& pres, const UnitaryRep& rep) {
    rep.validate(pres);
    if (static_cast<int>(pres.relators.size()) != pres.n_generators() - 1)
        throw DomainError("twisted Alexander function needs n - 1 relators for n generators");

    TwistedAlexanderResult res;
    res.pivot_column = choose_pivot(pres, rep);
    res.delta0 = delta0_for_pivot(pres, rep, res.pivot_column);
    res.delta1 = delta1_for_pivot(pres, rep, res.pivot_column);
    res.delta0_at_1 = res.delta0(1.0);
    res.delta1_at_1 = res.delta1.is_zero() ? cplx(0.0) : res.delta1(1.0);
    res.h1_vanishes = nonzero_at_one(res.delta1);

    if (pres.has_peripheral()) {
        res.cuspidal = cuspidality_check(rep, pres);
        if (!*res.cuspidal) res.warnings.push_back("representation is not cuspidal");
    } else {
        res.warnings.push_back("no meridian/longitude words: cuspidality not checked");
    }

    if (!res.h1_vanishes) {
        res.warnings.push_back("Delta_1(1) = 0: h^1 does not vanish");
        return res;
    }
    if (!nonzero_at_one(res.delta0)) {
        res.warnings.push_back("Delta_0(1) = 0: rho(x_p) has eigenvalue 1");
        return res;
    }
    res.torsion_at_1 = std::abs(res.delta1_at_1 / res.delta0_at_1);
    if (res.cuspidal.value_or(true)) res.ruelle_at_0 = *res.torsion_at_1 * *res.torsion_at_1;
    return res;
}

/// |A_K(xi) / (1 - xi)|^2 for a rank-one character with rho(t) = xi.
inline double ruelle_closed_form(const LaurentPoly& alexander, cplx xi) {
    const double v = std::abs(alexander(xi) / (1.0 - xi));
    return v * v;
}

} // namespace torsionlab
