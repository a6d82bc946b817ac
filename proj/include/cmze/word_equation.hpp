#pragma once
// Ladder solver for Q^b_{n+m} = sum_k f_k Q^a_{n,k} and the coefficient objects built on it.

#include <functional>
#include <string>
#include <vector>

#include "cmze/families.hpp"

namespace cmze {

struct WordProblem {
    // lhs(n) is the order-n left side, i.e. Q^b_{n+m}
    std::function<NCPoly(int)> lhs;
    // qa(n, k) is Q^a_{n,k}
    std::function<NCPoly(int, int)> qa;
    std::uint8_t alpha_a = ALPHA_A;
    int wcase = 1; // 1: a1 invertible, 2: odd letters vanish and a2 invertible
    bool right = false; // coefficients on the right: lhs_n = sum_k qa(n,k) f_k
    int order = 0;
    // alphabets whose odd letters vanish in case 2
    std::vector<std::uint8_t> zero_odd;
};

using Ladder = std::vector<NCPoly>;

// standard problem from family selectors; Q^b lives in alpha_b, Q^a in alpha_a
WordProblem family_problem(Family qb, std::uint8_t alpha_b, Family qa, std::uint8_t alpha_a, int m, int wcase,
                           int order);

Ladder solve_words(const WordProblem& pr);
// lhs_n minus the right side at order n, after the case-2 filter
NCPoly word_residual(const WordProblem& pr, const Ladder& f, int n);
// drops every word containing an odd letter of the listed alphabets
NCPoly drop_odd(const NCPoly& p, const std::vector<std::uint8_t>& alphas);

// commutative Laurent ladders in g_j = gamma_j
enum class SkewRule { Taylor, Shifted };
std::vector<CPoly> laurent_fk(int order, bool skew, SkewRule rule = SkewRule::Taylor);

// b_i = P L^i P, b1^-1 = (PLP|V)^-1
WordProblem operator_problem(int order);
Ladder operator_F(int order);
WordProblem operator_prime_problem(int order);
Ladder corollary_F_prime(int order);

// F_n(s) and G_m(t) over QL_i, PB_i (INV = PB1^-1), PLs, QLt
struct TimeDependentFG {
    Ladder F, G;
};
WordProblem td_F_problem(int order);
WordProblem td_G_problem(int order);
TimeDependentFG time_dependent_FG(int order);

// <F_n(s) G_m(t) v, v> for a rank-one Mori projection, rendered
std::string knm_scalar(int n, int m);

} // namespace cmze
