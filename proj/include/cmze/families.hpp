#pragma once
// Bell-type polynomial families, commutative and noncommutative, each by two routes.

#include <vector>

#include "cmze/word.hpp"

namespace cmze {

using Composition = std::vector<int>;

// order cap, default 12, overridden by CMZE_MAX_ORDER
int max_order();
void check_order(int n);

Rat factorial(int n);
Rat binomial(int n, int k);
// compositions of n (into exactly k parts when k >= 0), colexicographic
std::vector<Composition> compositions(int n, int k = -1);
Rat kappa(const Composition& c);
Rat multinomial(const Composition& c);
Word composition_word(const Composition& c, std::uint8_t alpha);

enum class Family { Bell, NCBell1, NCBell2, NCBipart, CBipart };
Family parse_family(const std::string& name);

// commutative Bell in x letters
CPoly bell(int n);
CPoly bell_partial(int n, int k);

// Type-I: closed form with kappa * multinomial, and (a1 + d) recurrence
NCPoly ncbell1(int n, std::uint8_t alpha = ALPHA_A);
NCPoly ncbell1_partial(int n, int k, std::uint8_t alpha = ALPHA_A);
NCPoly ncbell1_recurrence(int n, std::uint8_t alpha = ALPHA_A);
// sum_k C(n,k) B1_k a_{n-k+1}
NCPoly ncbell1_binomial(int n, std::uint8_t alpha = ALPHA_A);

// Type-II: closed form with multinomial / k!, and the power of A(t) = sum a_j t^j / j!
NCPoly ncbell2(int n, std::uint8_t alpha = ALPHA_A);
NCPoly ncbell2_partial(int n, int k, std::uint8_t alpha = ALPHA_A);
NCPoly ncbell2_partial_genfun(int n, int k, std::uint8_t alpha = ALPHA_A);

// noncommutative bipartition: signed closed form and the P~_n recurrence
NCPoly bipart(int n, std::uint8_t alpha = ALPHA_B);
NCPoly bipart_partial(int n, int k, std::uint8_t alpha = ALPHA_B);
NCPoly bipart_recurrence(int n, std::uint8_t alpha = ALPHA_B);

// commutative bipartition in b letters
CPoly cbipart(int n);
CPoly cbipart_partial(int n, int k);
CPoly cbipart_recurrence(int n);

// dispatch helpers; k < 0 means the full polynomial
NCPoly nc_family(Family f, int n, int k, std::uint8_t alpha);
CPoly c_family(Family f, int n, int k);

} // namespace cmze
