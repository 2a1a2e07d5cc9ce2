#pragma once

// Free-group words, the group ring C[F_n], and Fox free differential calculus.

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>
#include <vector>

#include "torsionlab/errors.hpp"

namespace torsionlab {

/// x_generator^sign. Generators are 0-based internally.
struct Letter {
    int generator = 0;
    int sign = 1;

    Letter inverse() const { return {generator, -sign}; }
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Free cancellation by a single left-to-right stack pass. Any cancellation
/// order reaches the same reduced word, so the result is canonical.
inline std::vector<Letter> word_reduce(const std::vector<Letter>& raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (const auto& l : raw) {
        if (l.sign != 1 && l.sign != -1) throw DomainError("letter exponent must be +1 or -1");
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

/// Freely reduced word in F_n.
class Word {
public:
    Word() = default;
    explicit Word(const std::vector<Letter>& letters) : letters_(word_reduce(letters)) {}

    static Word generator(int g, int sign = 1) { return Word({Letter{g, sign}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const {
        std::vector<Letter> inv;
        inv.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back(it->inverse());
        return Word(inv);
    }

    /// Signed number of occurrences of generator g.
    int exponent_sum(int g) const {
        int s = 0;
        for (const auto& l : letters_)
            if (l.generator == g) s += l.sign;
        return s;
    }

    /// One past the largest generator index used (0 for the empty word).
    int generator_bound() const {
        int m = 0;
        for (const auto& l : letters_) m = std::max(m, l.generator + 1);
        return m;
    }

    /// Prefix of the first `n` letters (already reduced).
    Word prefix(std::size_t n) const {
        Word w;
        w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n));
        return w;
    }

    /// Suffix starting at letter `from`.
    Word suffix(std::size_t from) const {
        Word w;
        w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(from), letters_.end());
        return w;
    }

    friend Word operator*(const Word& a, const Word& b) {
        std::vector<Letter> cat = a.letters_;
        cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
        return Word(cat);
    }

    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Finite formal combination sum c_w * w with complex coefficients.
///
/// Zero coefficients are never stored. Integer inputs stay exact since all
/// intermediate values are small integers representable in double.
class GroupRingElement {
public:
    using Coeff = std::complex<double>;

    GroupRingElement() = default;
    GroupRingElement(const Word& w, Coeff c = 1.0) { add(w, c); }

    static GroupRingElement one() { return GroupRingElement(Word{}); }

    const std::map<Word, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Coeff coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Coeff(0.0) : it->second;
    }

    void add(const Word& w, Coeff c) {
        if (c == Coeff(0.0)) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Coeff(0.0)) terms_.erase(it);
        }
    }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement out;
        for (const auto& [u, cu] : a.terms_)
            for (const auto& [v, cv] : b.terms_) out.add(u * v, cu * cv);
        return out;
    }

    friend GroupRingElement operator*(Coeff s, const GroupRingElement& a) {
        GroupRingElement out;
        for (const auto& [w, c] : a.terms_) out.add(w, s * c);
        return out;
    }

    /// Image under the augmentation w -> 1.
    Coeff augmentation() const {
        Coeff s = 0.0;
        for (const auto& [w, c] : terms_) s += c;
        return s;
    }

    int generator_bound() const {
        int m = 0;
        for (const auto& [w, c] : terms_) m = std::max(m, w.generator_bound());
        return m;
    }

    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
    std::map<Word, Coeff> terms_;
};

/// Left Fox derivative d w / d x_i with d(uv) = du + u dv.
///
/// Expanded letter by letter: a letter x_i contributes +prefix, a letter
/// x_i^-1 contributes -(prefix x_i^-1).
inline GroupRingElement fox_derivative(const Word& w, int generator) {
    if (generator < 0) throw DomainError("Fox derivative generator index out of range");
    GroupRingElement out;
    const auto& letters = w.letters();
    for (std::size_t m = 0; m < letters.size(); ++m) {
        if (letters[m].generator != generator) continue;
        if (letters[m].sign > 0)
            out.add(w.prefix(m), 1.0);
        else
            out.add(w.prefix(m + 1), -1.0);
    }
    return out;
}

/// Right Fox derivative with d(uv) = du v + dv, so w - 1 = sum (x_i - 1) dw/dx_i.
inline GroupRingElement fox_derivative_right(const Word& w, int generator) {
    if (generator < 0) throw DomainError("Fox derivative generator index out of range");
    GroupRingElement out;
    const auto& letters = w.letters();
    for (std::size_t m = 0; m < letters.size(); ++m) {
        if (letters[m].generator != generator) continue;
        if (letters[m].sign > 0)
            out.add(w.suffix(m + 1), 1.0);
        else
            out.add(w.suffix(m), -1.0);
    }
    return out;
}

/// Range-checked overloads for a presentation with `n_generators` generators.
inline GroupRingElement fox_derivative(const Word& w, int generator, int n_generators) {
    if (generator < 0 || generator >= n_generators)
        throw DomainError("Fox derivative generator index out of range");
    return fox_derivative(w, generator);
}

/// sum_i (dw/dx_i)(x_i - 1) - (w - 1); the zero element for every word.
inline GroupRingElement fundamental_identity_residual(const Word& w) {
    GroupRingElement acc;
    for (int i = 0; i < w.generator_bound(); ++i) {
        const GroupRingElement xi_minus_one = GroupRingElement(Word::generator(i)) - GroupRingElement::one();
        acc += fox_derivative(w, i) * xi_minus_one;
    }
    acc -= GroupRingElement(w) - GroupRingElement::one();
    return acc;
}

} // namespace torsionlab
