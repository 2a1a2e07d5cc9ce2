#pragma once

// Unitary representations given by generator images, and the
// representation file format:
//
//   rank r;
//   mat <name> = [ [re,im], [re,im], ... ];   # r*r entries, row-major
//   char <name> = re,im;                      # rank 1 only

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "torsionlab/detail/lexer.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/free_group.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/presentation.hpp"

namespace torsionlab {

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kRelatorTolerance = 1e-8;

struct UnitaryRep {
    int rank = 1;
    /// One image per generator, each rank x rank.
    std::vector<Eigen::MatrixXcd> images;

    int n_generators() const { return static_cast<int>(images.size()); }

    /// Ordered product of generator images and their inverses (adjoints).
    Eigen::MatrixXcd evaluate(const Word& w) const {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(rank, rank);
        for (const auto& l : w.letters()) {
            const auto& u = images.at(static_cast<std::size_t>(l.generator));
            if (l.sign > 0)
                acc = acc * u;
            else
                acc = acc * u.adjoint();
        }
        return acc;
    }

    /// Linear extension of evaluate() to the group ring.
    Eigen::MatrixXcd evaluate(const GroupRingElement& e) const {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rank, rank);
        for (const auto& [w, c] : e.terms()) acc += c * evaluate(w);
        return acc;
    }

    /// max_i ||U_i^* U_i - I|| (Frobenius).
    double unitarity_defect() const {
        double worst = 0.0;
        for (const auto& u : images)
            worst = std::max(worst, (u.adjoint() * u - Eigen::MatrixXcd::Identity(rank, rank)).norm());
        return worst;
    }

    /// max_j ||rho(r_j) - I|| (Frobenius).
    double relator_defect(const Presentation& pres) const {
        double worst = 0.0;
        for (const auto& r : pres.relators)
            worst = std::max(worst, (evaluate(r) - Eigen::MatrixXcd::Identity(rank, rank)).norm());
        return worst;
    }

    /// Image count, sizes and unitarity; no relations are checked.
    void validate_images(int expected_generators) const {
        if (rank < 1) throw DomainError("representation rank must be positive");
        if (n_generators() != expected_generators)
            throw DomainError("representation assigns " + std::to_string(n_generators()) + " images for " +
                              std::to_string(expected_generators) + " generators");
        for (const auto& u : images)
            if (u.rows() != rank || u.cols() != rank) throw DomainError("generator image has the wrong size");
        if (unitarity_defect() > kUnitarityTolerance) throw DomainError("generator image is not unitary");
    }

    /// Throws DomainError unless this is a unitary representation of `pres`.
    void validate(const Presentation& pres) const {
        validate_images(pres.n_generators());
        if (relator_defect(pres) > kRelatorTolerance) throw DomainError("images do not satisfy the relators");
    }
};

/// Rank-one character x_i -> xi^{d_i}, i.e. rho(t) = xi composed with epsilon.
inline UnitaryRep character_rep(const Presentation& pres, cplx xi) {
    UnitaryRep rep;
    rep.rank = 1;
    for (int d : pres.abelianization_degrees) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = std::pow(xi, d);
        rep.images.push_back(m);
    }
    return rep;
}

/// Rank-one character sending each of `n_generators` generators to xi.
inline UnitaryRep character_rep(int n_generators, cplx xi) {
    UnitaryRep rep;
    rep.rank = 1;
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = xi;
    rep.images.assign(static_cast<std::size_t>(n_generators), m);
    return rep;
}

inline UnitaryRep trivial_rep(const Presentation& pres, int rank = 1) {
    UnitaryRep rep;
    rep.rank = rank;
    rep.images.assign(static_cast<std::size_t>(pres.n_generators()), Eigen::MatrixXcd::Identity(rank, rank));
    return rep;
}

/// Parse a representation file against a list of generator names; every
/// generator must be assigned exactly once.
inline UnitaryRep parse_representation(const std::string& text, const std::vector<std::string>& names) {
    detail::TokenStream ts(detail::tokenize(text));
    ts.expect_keyword("rank");
    const long rank = ts.expect_integer();
    if (rank < 1) throw ParseError("rank must be positive");
    ts.expect(";");

    UnitaryRep rep;
    rep.rank = static_cast<int>(rank);
    rep.images.assign(names.size(), Eigen::MatrixXcd());
    std::vector<bool> seen(names.size(), false);

    auto read_complex = [&ts]() {
        const double re = ts.expect_number();
        ts.expect(",");
        const double im = ts.expect_number();
        return cplx(re, im);
    };

    while (!ts.at_end()) {
        const auto kw = ts.peek();
        if (!kw.is_keyword("mat") && !kw.is_keyword("char")) ts.fail("expected 'mat' or 'char'");
        ts.next();
        const auto name_tok = ts.peek();
        const std::string name = ts.expect_identifier();
        int g = -1;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) g = static_cast<int>(i);
        if (g < 0) throw ParseError("unknown generator '" + name + "'", name_tok.line, name_tok.column);
        if (seen[static_cast<std::size_t>(g)]) throw ParseError("generator '" + name + "' assigned twice", name_tok.line, name_tok.column);
        seen[static_cast<std::size_t>(g)] = true;
        ts.expect("=");

        Eigen::MatrixXcd m(rep.rank, rep.rank);
        if (kw.is_keyword("char")) {
            if (rep.rank != 1) throw ParseError("'char' shorthand requires rank 1", kw.line, kw.column);
            m(0, 0) = read_complex();
        } else {
            ts.expect("[");
            for (int k = 0; k < rep.rank * rep.rank; ++k) {
                if (k > 0) ts.expect(",");
                ts.expect("[");
                m(k / rep.rank, k % rep.rank) = read_complex();
                ts.expect("]");
            }
            ts.expect("]");
        }
        ts.expect(";");
        rep.images[static_cast<std::size_t>(g)] = m;
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!seen[i]) throw ParseError("no image given for generator '" + names[i] + "'");
    return rep;
}

} // namespace torsionlab
