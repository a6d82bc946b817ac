#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <random>

#include "print.hpp"
#include "cmze/families.hpp"

using namespace cmze;

namespace {

Rat eval_ones(const NCPoly& p) {
    Rat s = 0;
    for (const auto& [w, c] : p.terms()) s += c;
    return s;
}

// B_{n,k} at x_j = h_j, exactly
Rat eval_partial(const CPoly& p, const std::vector<Rat>& h) {
    Rat s = 0;
    for (const auto& [m, c] : p.terms()) {
        Rat t = c;
        for (const auto& [l, e] : m)
            for (int i = 0; i < e; ++i) t *= h[l.index];
        s += t;
    }
    return s;
}

} // namespace

TEST(Families, CommutativeBell) {
    EXPECT_EQ(bell(0), parse_cpoly("1"));
    EXPECT_EQ(bell(4), parse_cpoly("x1^4+6x1^2x2+4x1x3+3x2^2+x4"));
    EXPECT_EQ(bell_partial(3, 2), parse_cpoly("3x1x2"));
}

TEST(Families, TypeOne) {
    EXPECT_EQ(ncbell1(3), parse_poly("a1^3+2a1a2+a2a1+a3"));
    NCPoly b4 = ncbell1(4);
    EXPECT_EQ(b4.coeff(parse_word("a1a1a2")), 3);
    EXPECT_EQ(b4.coeff(parse_word("a2a1a1")), 1);
    EXPECT_EQ(eval_ones(b4), 15);
}

TEST(Families, TypeTwo) {
    EXPECT_EQ(ncbell2(1), parse_poly("a1"));
    EXPECT_EQ(ncbell2(3), parse_poly("a1^3+3/2a1a2+3/2a2a1+a3"));
    NCPoly b4 = ncbell2(4);
    EXPECT_EQ(b4.coeff(parse_word("a2a2")), 3);
    EXPECT_EQ(b4.coeff(parse_word("a1a3")), 2);
}

TEST(Families, Bipartition) {
    EXPECT_EQ(bipart(3), parse_poly("b1^3-b1b2-b2b1+b3"));
    NCPoly p4 = bipart(4);
    EXPECT_EQ(p4.coeff(parse_word("b1b2b1")), 1);
    EXPECT_EQ(p4.coeff(parse_word("b2b2")), -1);
    for (int n = 2; n <= 6; ++n) EXPECT_EQ(eval_ones(bipart(n)), 0) << n;
    EXPECT_EQ(cbipart(3), parse_cpoly("b1^3-2b1b2+b3"));
    EXPECT_EQ(cbipart(4), parse_cpoly("-b1^4+3b1^2b2-2b1b3-b2^2+b4"));
}

TEST(Families, KappaAndMultinomial) {
    EXPECT_EQ(kappa({1, 2}), Rat(2, 3));
    EXPECT_EQ(kappa({2, 1}), Rat(1, 3));
    EXPECT_EQ(kappa({1, 2}) + kappa({2, 1}), 1);
    EXPECT_EQ(multinomial({1, 1, 2}), 12);
    EXPECT_THROW(kappa({}), std::invalid_argument);
}

TEST(Families, CompositionsColex) {
    auto c = compositions(3);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(compositions(4, 2).size(), 3u);
    for (const auto& x : c) EXPECT_EQ(std::accumulate(x.begin(), x.end(), 0), 3);
}

TEST(Families, OrderCapFromEnvironment) {
    EXPECT_THROW(check_order(13), std::invalid_argument);
    setenv("CMZE_MAX_ORDER", "14", 1);
    EXPECT_NO_THROW(check_order(13));
    setenv("CMZE_MAX_ORDER", "x", 1);
    EXPECT_THROW(check_order(1), std::invalid_argument);
    unsetenv("CMZE_MAX_ORDER");
    EXPECT_EQ(max_order(), 12);
}

TEST(FamiliesProperty, RouteEquivalence) {
    for (int n = 0; n <= 10; ++n) {
        EXPECT_EQ(ncbell1(n), ncbell1_recurrence(n)) << n;
        EXPECT_EQ(ncbell1(n), ncbell1_binomial(n)) << n;
        EXPECT_EQ(bipart(n), bipart_recurrence(n)) << n;
        EXPECT_EQ(cbipart(n), cbipart_recurrence(n)) << n;
        for (int k = 1; k <= n; ++k) EXPECT_EQ(ncbell2_partial(n, k), ncbell2_partial_genfun(n, k)) << n << "," << k;
    }
}

TEST(FamiliesProperty, Abelianization) {
    for (int n = 0; n <= 10; ++n) {
        CPoly B = abelianize(ncbell1(n, ALPHA_X));
        EXPECT_EQ(B, bell(n)) << n;
        EXPECT_EQ(abelianize(ncbell2(n, ALPHA_X)), bell(n)) << n;
        EXPECT_EQ(abelianize(bipart(n)), cbipart(n)) << n;
    }
}

TEST(FamiliesProperty, WordCensus) {
    for (int n = 1; n <= 8; ++n) {
        auto p1 = ncbell1(n), p2 = ncbell2(n), p3 = bipart(n, ALPHA_A);
        std::size_t words = std::size_t{1} << (n - 1);
        ASSERT_EQ(p1.size(), words);
        ASSERT_EQ(p2.size(), words);
        ASSERT_EQ(p3.size(), words);
        auto i2 = p2.terms().begin();
        auto i3 = p3.terms().begin();
        for (const auto& [w, c] : p1.terms()) {
            EXPECT_EQ(w, i2->first);
            EXPECT_EQ(w, i3->first);
            EXPECT_NE(c, 0);
            ++i2;
            ++i3;
        }
    }
}

TEST(FamiliesProperty, KappaPartitionOfUnity) {
    for (int n = 1; n <= 8; ++n)
        for (const auto& c : compositions(n)) {
            std::vector<int> idx(c.size());
            std::iota(idx.begin(), idx.end(), 0);
            Rat sum = 0;
            do {
                Composition q;
                for (int i : idx) q.push_back(c[i]);
                sum += kappa(q);
            } while (std::next_permutation(idx.begin(), idx.end()));
            EXPECT_EQ(sum, 1);
        }
}

TEST(FamiliesProperty, FaaDiBruno) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    auto draw = [&] {
        Rat r(num(rng), den(rng));
        r.canonicalize();
        return r;
    };
    const int N = 8;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rat> g(N + 1), h(N + 1, 0);
        for (int k = 0; k <= N; ++k) g[k] = draw();
        for (int j = 1; j <= N; ++j) h[j] = draw();
        // ordinary coefficients of H(x) = sum h_j x^j / j!
        std::vector<Rat> H(N + 1, 0), comp(N + 1, 0), pw(N + 1, 0);
        for (int j = 1; j <= N; ++j) H[j] = h[j] / factorial(j);
        pw[0] = 1;
        for (int k = 0; k <= N; ++k) {
            for (int n = 0; n <= N; ++n) comp[n] += g[k] / factorial(k) * pw[n];
            std::vector<Rat> next(N + 1, 0);
            for (int a = 0; a <= N; ++a)
                for (int b = 1; a + b <= N; ++b) next[a + b] += pw[a] * H[b];
            pw = next;
        }
        for (int n = 0; n <= N; ++n) {
            Rat s = 0;
            for (int k = 0; k <= n; ++k) s += g[k] * eval_partial(bell_partial(n, k), h);
            EXPECT_EQ(comp[n], s / factorial(n)) << n;
        }
    }
}
