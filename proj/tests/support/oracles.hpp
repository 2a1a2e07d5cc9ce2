#pragma once

// Independent oracles for tests. Nothing here calls lmat_det or the Fox
// pipeline.

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/laurent.hpp"

namespace torsionlab::testing {

#ifndef TORSIONLAB_TEST_CORPUS
#error "TORSIONLAB_TEST_CORPUS must point at the corpus directory"
#endif

inline std::string corpus_path(const std::string& name) { return std::string(TORSIONLAB_TEST_CORPUS) + "/" + name; }

/// Determinant by Laplace expansion along the first row.
inline LaurentPoly cofactor_det(const LaurentMatrix& m) {
    const int n = m.rows();
    if (n == 0) return LaurentPoly::constant(1.0);
    if (n == 1) return m(0, 0);
    LaurentPoly acc;
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        LaurentMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int c_out = 0;
            for (int c = 0; c < n; ++c)
                if (c != j) minor(r - 1, c_out++) = m(r, c);
        }
        const LaurentPoly term = m(0, j) * cofactor_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// Integer polynomial in t (index = exponent), exact.
using IntPoly = std::vector<long>;

inline IntPoly ip_trim(IntPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}
inline IntPoly ip_add(const IntPoly& a, const IntPoly& b, long sb = 1) {
    IntPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += sb * b[i];
    return ip_trim(out);
}
inline IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return ip_trim(out);
}

inline IntPoly ip_det(const std::vector<std::vector<IntPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return {1};
    if (n == 1) return m[0][0];
    IntPoly acc;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<IntPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<IntPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(row);
        }
        acc = ip_add(acc, ip_mul(m[0][j], ip_det(minor)), j % 2 == 0 ? 1 : -1);
    }
    return acc;
}

/// Alexander polynomial det(V - t V^T) of an integer Seifert matrix.
inline IntPoly seifert_alexander(const std::vector<std::vector<long>>& v) {
    const std::size_t n = v.size();
    std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = ip_trim({v[i][j], -v[j][i]});
    return ip_det(m);
}

inline LaurentPoly to_laurent(const IntPoly& p) {
    std::vector<cplx> c(p.begin(), p.end());
    return LaurentPoly(0, c);
}

/// Sidecar `.alex` file: `seifert [[..],[..]]` and `alexander c0 c1 ...`.
struct AlexanderSidecar {
    std::vector<std::vector<long>> seifert;
    IntPoly alexander;
};

inline AlexanderSidecar read_sidecar(const std::string& path) {
    std::ifstream in(path);
    AlexanderSidecar out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("seifert", 0) == 0) {
            std::vector<long> row;
            int depth = 0;
            std::string num;
            for (char ch : line.substr(7)) {
                if (ch == '[') {
                    ++depth;
                } else if (ch == ']' || ch == ',') {
                    if (!num.empty()) row.push_back(std::stol(num));
                    num.clear();
                    if (ch == ']' && depth == 2) {
                        out.seifert.push_back(row);
                        row.clear();
                    }
                    if (ch == ']') --depth;
                } else if (ch != ' ') {
                    num += ch;
                }
            }
        } else if (line.rfind("alexander", 0) == 0) {
            std::istringstream ss(line.substr(9));
            long c = 0;
            while (ss >> c) out.alexander.push_back(c);
        }
    }
    return out;
}

/// p == c t^k q for some unit c of modulus one and integer k, coefficientwise to tol
/// (relative to the largest coefficient of q).
inline bool equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q, double tol) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    if (p.coefficients().size() != q.coefficients().size()) return false;
    const cplx c = p.coefficients().back() / q.coefficients().back();
    if (std::abs(std::abs(c) - 1.0) > tol) return false;
    const double scale = q.max_abs_coefficient();
    for (std::size_t k = 0; k < q.coefficients().size(); ++k)
        if (std::abs(p.coefficients()[k] - c * q.coefficients()[k]) > tol * scale) return false;
    return true;
}

inline LaurentPoly random_laurent(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> exp(lo, hi);
    std::normal_distribution<double> g;
    int a = exp(rng);
    int b = exp(rng);
    if (a > b) std::swap(a, b);
    std::vector<cplx> c;
    for (int k = a; k <= b; ++k) c.emplace_back(g(rng), g(rng));
    return LaurentPoly(a, c);
}

inline LaurentMatrix random_laurent_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
    LaurentMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = random_laurent(rng, lo, hi);
    return m;
}

/// Relative coefficientwise distance max_k |a_k - b_k| / max_k |b_k|.
inline double coefficient_distance(const LaurentPoly& a, const LaurentPoly& b) {
    const int lo = std::min(a.lowest_exponent(), b.lowest_exponent());
    const int hi = std::max(a.is_zero() ? lo : a.highest_exponent(), b.is_zero() ? lo : b.highest_exponent());
    double worst = 0.0;
    for (int k = lo; k <= hi; ++k) worst = std::max(worst, std::abs(a.coefficient(k) - b.coefficient(k)));
    const double scale = std::max(a.max_abs_coefficient(), b.max_abs_coefficient());
    return scale > 0.0 ? worst / scale : worst;
}

} // namespace torsionlab::testing
