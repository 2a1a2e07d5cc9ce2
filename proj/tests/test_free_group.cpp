#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "torsionlab/free_group.hpp"

using namespace torsionlab;
using cplx = std::complex<double>;

namespace {

std::vector<Letter> random_letters(std::mt19937_64& rng, int n_generators, int max_length) {
    std::uniform_int_distribution<int> len(0, max_length);
    std::uniform_int_distribution<int> gen(0, n_generators - 1);
    std::bernoulli_distribution inv(0.5);
    std::vector<Letter> out(static_cast<std::size_t>(len(rng)));
    for (auto& l : out) l = Letter{gen(rng), inv(rng) ? -1 : 1};
    return out;
}

// Cancels adjacent inverse pairs at random positions until none are left.
std::vector<Letter> reduce_in_random_order(std::vector<Letter> w, std::mt19937_64& rng) {
    for (;;) {
        std::vector<std::size_t> spots;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] == w[i + 1].inverse()) spots.push_back(i);
        if (spots.empty()) return w;
        const std::size_t at = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(at), w.begin() + static_cast<std::ptrdiff_t>(at) + 2);
    }
}

const Letter x1{0, 1}, X1{0, -1}, x2{1, 1}, X2{1, -1};

// Trefoil relator x1 x2 x1 x2^-1 x1^-1 x2^-1.
Word trefoil_relator() { return Word({x1, x2, x1, X2, X1, X2}); }

} // namespace

TEST(WordReduce, Examples) {
    EXPECT_TRUE(word_reduce({x1, X1}).empty());
    EXPECT_EQ(word_reduce({x1, x2, X2, x1}), (std::vector<Letter>{x1, x1}));
    const std::vector<Letter> reduced{x1, x2, X1, X2};
    EXPECT_EQ(word_reduce(reduced), reduced);
    EXPECT_THROW(word_reduce({Letter{0, 2}}), DomainError);
}

TEST(WordReduce, ConfluentAndIdempotent) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto raw = random_letters(rng, 3, 24);
        const auto once = word_reduce(raw);
        EXPECT_EQ(word_reduce(once), once);
        EXPECT_EQ(reduce_in_random_order(raw, rng), once);
    }
}

TEST(FoxDerivative, Examples) {
    EXPECT_EQ(fox_derivative(Word({x1}), 0), GroupRingElement::one());
    EXPECT_TRUE(fox_derivative(Word({x1}), 1).is_zero());
    EXPECT_EQ(fox_derivative(Word({X1}), 0), GroupRingElement(Word({X1}), -1.0));

    GroupRingElement expected = GroupRingElement::one();
    expected += GroupRingElement(Word({x1, x2}));
    expected -= GroupRingElement(Word({x1, x2, x1, X2, X1}));
    EXPECT_EQ(fox_derivative(trefoil_relator(), 0), expected);

    EXPECT_THROW(fox_derivative(Word({x1}), 2, 2), DomainError);
    EXPECT_THROW(fox_derivative(Word({x1}), -1), DomainError);
}

TEST(FoxDerivative, ProductRuleOnRandomPairs) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const Word u(random_letters(rng, 4, 12));
        const Word v(random_letters(rng, 4, 12));
        for (int i = 0; i < 4; ++i) {
            const auto lhs = fox_derivative(u * v, i);
            const auto rhs = fox_derivative(u, i) + GroupRingElement(u) * fox_derivative(v, i);
            EXPECT_EQ(lhs, rhs);
            const auto lhs_r = fox_derivative_right(u * v, i);
            const auto rhs_r = fox_derivative_right(u, i) * GroupRingElement(v) + fox_derivative_right(v, i);
            EXPECT_EQ(lhs_r, rhs_r);
        }
    }
}

TEST(FoxDerivative, FundamentalIdentityExamples) {
    EXPECT_TRUE(fundamental_identity_residual(Word({x1})).is_zero());
    EXPECT_TRUE(fundamental_identity_residual(Word{}).is_zero());
    EXPECT_TRUE(fundamental_identity_residual(trefoil_relator()).is_zero());
}

TEST(FoxDerivative, FundamentalIdentityOnRandomWords) {
    std::mt19937_64 rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 5;
        const Word w(random_letters(rng, n, 30));
        const auto residual = fundamental_identity_residual(w);
        ASSERT_TRUE(residual.is_zero()) << "trial " << trial;
    }
}

TEST(FoxDerivative, RightIdentityOnRandomWords) {
    std::mt19937_64 rng(2000);
    for (int trial = 0; trial < 300; ++trial) {
        const Word w(random_letters(rng, 4, 20));
        GroupRingElement acc;
        for (int i = 0; i < 4; ++i)
            acc += (GroupRingElement(Word::generator(i)) - GroupRingElement::one()) * fox_derivative_right(w, i);
        acc -= GroupRingElement(w) - GroupRingElement::one();
        ASSERT_TRUE(acc.is_zero());
    }
}

TEST(FoxDerivative, CoefficientsAreIntegers) {
    std::mt19937_64 rng(3000);
    for (int trial = 0; trial < 200; ++trial) {
        const Word w(random_letters(rng, 3, 30));
        for (int i = 0; i < 3; ++i) {
            const auto d = fox_derivative(w, i);
            for (const auto& [word, c] : d.terms()) {
                EXPECT_EQ(c.imag(), 0.0);
                EXPECT_EQ(c.real(), std::round(c.real()));
            }
        }
    }
}

// With every generator abelianizing to t: sum_i eps(dr/dx_i)(t - 1) = t^{deg r} - 1.
TEST(FoxDerivative, AbelianizedIdentity) {
    std::mt19937_64 rng(4000);
    for (int trial = 0; trial < 200; ++trial) {
        const Word w(random_letters(rng, 3, 16));
        const cplx t(0.3, 1.1);
        auto eps = [&](const GroupRingElement& e) {
            cplx s = 0.0;
            for (const auto& [word, c] : e.terms()) {
                int deg = 0;
                for (const auto& l : word.letters()) deg += l.sign;
                s += c * std::pow(t, deg);
            }
            return s;
        };
        cplx lhs = 0.0;
        for (int i = 0; i < 3; ++i) lhs += eps(fox_derivative(w, i)) * (t - 1.0);
        int deg = 0;
        for (const auto& l : w.letters()) deg += l.sign;
        EXPECT_LT(std::abs(lhs - (std::pow(t, deg) - 1.0)), 1e-9);
    }
}

TEST(GroupRing, AugmentationAndArithmetic) {
    const GroupRingElement a = GroupRingElement(Word({x1})) - GroupRingElement::one();
    EXPECT_EQ(a.augmentation(), cplx(0.0));
    const GroupRingElement inv = GroupRingElement(Word({X1}));
    EXPECT_EQ(GroupRingElement(Word({x1})) * inv, GroupRingElement::one());
    EXPECT_TRUE((a - a).is_zero());
}
