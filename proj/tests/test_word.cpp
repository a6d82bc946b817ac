#include <gtest/gtest.h>

#include <random>

#include "print.hpp"
#include "cmze/word.hpp"

using namespace cmze;

namespace {

NCPoly random_poly(std::mt19937& rng, int terms) {
    std::uniform_int_distribution<int> len(0, 3), idx(1, 3), num(-5, 5), den(1, 4);
    NCPoly p;
    for (int t = 0; t < terms; ++t) {
        Word w;
        for (int k = len(rng); k > 0; --k) w.push_back(a(idx(rng)));
        p.add_term(w, Rat(num(rng), den(rng)));
    }
    return p;
}

Mat random_mat(std::mt19937& rng, int d) {
    std::normal_distribution<double> g;
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

} // namespace

TEST(Word, Concatenation) {
    EXPECT_EQ(NCPoly::from(a(1)) * NCPoly::from(a(2)), parse_poly("a1a2"));
    EXPECT_EQ(NCPoly::from(a_inv(1)) * parse_poly("a1a2"), parse_poly("a2"));
    EXPECT_EQ(parse_poly("a1+a2") * parse_poly("a1-a2"), parse_poly("a1^2-a1a2+a2a1-a2^2"));
}

TEST(Word, InverseCancellationAtSeam) {
    Word w = concat({a(2), a(1)}, {a_inv(1), a(3)});
    EXPECT_EQ(render_word(w), "a2a3");
    EXPECT_EQ(grade(w), 5);
    EXPECT_EQ(grade({a(2), a_inv(1)}), 1);
}

TEST(Word, Derivation) {
    EXPECT_EQ(derive(parse_poly("a1")), parse_poly("a2"));
    EXPECT_EQ(derive(parse_poly("a1a2")), parse_poly("a2a2+a1a3"));
    EXPECT_TRUE(derive(NCPoly::identity()).is_zero());
    EXPECT_THROW(derive(parse_poly("a1^-1")), std::domain_error);
}

TEST(Word, SubstituteMatrices) {
    std::mt19937 rng(3);
    Mat M = random_mat(rng, 2);
    std::map<Letter, Mat> img{{a(1), M}, {a_inv(1), M.inverse()}};
    EXPECT_LT((substitute(parse_poly("a1^2"), img) - M * M).norm(), 1e-12);
    EXPECT_LT((substitute(parse_poly("a1a1^-1"), img) - Mat::Identity(2, 2)).norm(), 1e-12);
    // Omega_0 = D_2 - D_1^2
    Mat D1 = random_mat(rng, 3), D2 = random_mat(rng, 3);
    std::map<Letter, Mat> dm{{b(1), D1}, {b(2), D2}};
    EXPECT_LT((substitute(parse_poly("b2-b1^2"), dm) - (D2 - D1 * D1)).norm(), 1e-12);
}

TEST(Word, Abelianize) {
    EXPECT_TRUE(abelianize(parse_poly("a1a2-a2a1")).is_zero());
    EXPECT_EQ(abelianize(parse_poly("a1a2+a2a1")), parse_cpoly("2a1a2"));
}

TEST(Word, RenderParseRoundTrip) {
    for (const char* s : {"I", "0", "3/2a1a2-a2^2", "-b1a1^-1a2a1^-2", "INV^2PLsQL1", "b1^-1g2"}) {
        NCPoly p = parse_poly(s);
        EXPECT_EQ(parse_poly(render(p)), p) << s;
        EXPECT_EQ(poly_from_json(to_json(p)), p) << s;
    }
    EXPECT_EQ(render(parse_poly("a2a1+a1^3")), render(parse_poly("a1a1a1+a2a1")));
}

TEST(Word, JsonKeepsBigCoefficients) {
    NCPoly p(Word{a(1)}, Rat(mpz_class("123456789012345678901234567890"), 7));
    EXPECT_EQ(poly_from_json(to_json(p)), p);
}

TEST(WordProperty, Associativity) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        NCPoly p = random_poly(rng, 4), q = random_poly(rng, 4), r = random_poly(rng, 4);
        EXPECT_EQ((p * q) * r, p * (q * r));
    }
}

TEST(WordProperty, Leibniz) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        NCPoly p = random_poly(rng, 3), q = random_poly(rng, 3);
        EXPECT_EQ(derive(p * q), derive(p) * q + p * derive(q));
    }
}

TEST(WordProperty, GradingAdditiveAndDeriveShifts) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        NCPoly p = random_poly(rng, 3), q = random_poly(rng, 3);
        std::set<int> gp, gq;
        for (const auto& [w, c] : p.terms()) gp.insert(grade(w));
        for (const auto& [w, c] : q.terms()) gq.insert(grade(w));
        const NCPoly pq = p * q, dp = derive(p);
        for (const auto& [w, c] : pq.terms()) {
            bool found = false;
            for (int x : gp)
                for (int y : gq) found = found || x + y == grade(w);
            EXPECT_TRUE(found);
        }
        for (const auto& [w, c] : dp.terms()) EXPECT_TRUE(gp.count(grade(w) - 1));
    }
}

TEST(WordProperty, SubstituteIsHomomorphism) {
    std::mt19937 rng(14);
    std::map<Letter, Mat> img{{a(1), random_mat(rng, 3)}, {a(2), random_mat(rng, 3)}, {a(3), random_mat(rng, 3)}};
    std::map<Letter, NCPoly> pimg{{a(1), parse_poly("b1+b2")}, {a(2), parse_poly("b2b1")}, {a(3), parse_poly("I-b3")}};
    for (int trial = 0; trial < 20; ++trial) {
        NCPoly p = random_poly(rng, 3), q = random_poly(rng, 3);
        Mat lhs = substitute(p * q, img), rhs = substitute(p, img) * substitute(q, img);
        EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm()));
        EXPECT_EQ(substitute(p * q, pimg), substitute(p, pimg) * substitute(q, pimg));
    }
}
