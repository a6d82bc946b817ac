#pragma once
// Free associative algebra of words with exact rational coefficients.

#include <gmpxx.h>

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cmze {

using Rat = mpq_class;
using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline double to_double(const Rat& r) { return r.get_d(); }
std::string rat_str(const Rat& r);

// Alphabet tags. A word may mix letters from several alphabets.
enum Alpha : std::uint8_t {
    ALPHA_A = 0,   // a_j
    ALPHA_B = 1,   // b_j
    ALPHA_X = 2,   // x_j  (commutative Bell variables)
    ALPHA_G = 3,   // g_j  = gamma_j, index starts at 0
    ALPHA_L = 4,   // L_j
    ALPHA_QL = 5,  // QL_j
    ALPHA_PLS = 6, // PL(s), index 0
    ALPHA_QLT = 7, // QL(t), index 0
    ALPHA_PB = 8,  // P B~_j(L) P; inverse of index 1 renders as INV
};

struct Letter {
    std::uint8_t alpha = ALPHA_A;
    std::int16_t index = 1;
    bool inv = false;

    auto operator<=>(const Letter&) const = default;
    int grade() const { return inv ? -index : index; }
    Letter inverse() const { return Letter{alpha, index, !inv}; }
};

Letter letter(std::uint8_t alpha, int index, bool inv = false);
inline Letter a(int j) { return letter(ALPHA_A, j); }
inline Letter b(int j) { return letter(ALPHA_B, j); }
inline Letter a_inv(int j) { return letter(ALPHA_A, j, true); }
inline Letter b_inv(int j) { return letter(ALPHA_B, j, true); }

using Word = std::vector<Letter>;

int grade(const Word& w);
// appends y to x, cancelling adjacent inverse pairs at the seam
Word concat(const Word& x, const Word& y);
Word canonical(const Word& w);

// order used for rendering: grade, then length, then lexicographic
struct WordLess {
    bool operator()(const Word& x, const Word& y) const;
};

std::string render_letter(const Letter& l);
std::string render_word(const Word& w);
Word parse_word(const std::string& s);

class NCPoly {
  public:
    using Terms = std::map<Word, Rat, WordLess>;

    NCPoly() = default;
    explicit NCPoly(const Word& w, const Rat& c = 1);
    static NCPoly identity() { return NCPoly(Word{}); }
    static NCPoly from(const Letter& l) { return NCPoly(Word{l}); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rat coeff(const Word& w) const;
    void add_term(const Word& w, const Rat& c);

    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    NCPoly& operator*=(const Rat& c);
    friend NCPoly operator+(NCPoly x, const NCPoly& y) { return x += y; }
    friend NCPoly operator-(NCPoly x, const NCPoly& y) { return x -= y; }
    friend NCPoly operator-(NCPoly x) { return x *= Rat(-1); }
    friend NCPoly operator*(NCPoly x, const Rat& c) { return x *= c; }
    friend NCPoly operator*(const Rat& c, NCPoly x) { return x *= c; }
    friend NCPoly operator*(const NCPoly& x, const NCPoly& y);
    friend bool operator==(const NCPoly& x, const NCPoly& y) { return x.terms_ == y.terms_; }

    NCPoly pow(int n) const;
    // keep only terms whose words satisfy pred
    NCPoly filter(const std::function<bool(const Word&)>& pred) const;

  private:
    Terms terms_;
};

std::string render(const NCPoly& p);
NCPoly parse_poly(const std::string& s);
nlohmann::json to_json(const NCPoly& p);
NCPoly poly_from_json(const nlohmann::json& j);

// d a_j = a_{j+1} with the Leibniz rule; inverse letters are rejected
NCPoly derive(const NCPoly& p);

// homomorphic extension of a letter map
NCPoly substitute(const NCPoly& p, const std::function<NCPoly(const Letter&)>& image);
Mat substitute(const NCPoly& p, const std::function<Mat(const Letter&)>& image, int dim);
NCPoly substitute(const NCPoly& p, const std::map<Letter, NCPoly>& images);
Mat substitute(const NCPoly& p, const std::map<Letter, Mat>& images);

// ---- commutative Laurent polynomials ----

// letter -> exponent, sorted, no zero exponents; inverse flags are folded into the sign
using Monomial = std::vector<std::pair<Letter, int>>;

class CPoly {
  public:
    using Terms = std::map<Monomial, Rat>;

    CPoly() = default;
    explicit CPoly(const Rat& c);
    CPoly(const Monomial& m, const Rat& c);
    static CPoly var(const Letter& l, int power = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Rat& c);

    CPoly& operator+=(const CPoly& o);
    CPoly& operator-=(const CPoly& o);
    CPoly& operator*=(const Rat& c);
    friend CPoly operator+(CPoly x, const CPoly& y) { return x += y; }
    friend CPoly operator-(CPoly x, const CPoly& y) { return x -= y; }
    friend CPoly operator*(CPoly x, const Rat& c) { return x *= c; }
    friend CPoly operator*(const CPoly& x, const CPoly& y);
    friend bool operator==(const CPoly& x, const CPoly& y) { return x.terms_ == y.terms_; }

    CPoly pow(int n) const;
    // drop every monomial containing a letter for which pred holds
    CPoly drop(const std::function<bool(const Letter&)>& pred) const;
    CPoly substitute(const std::function<CPoly(const Letter&)>& image) const;
    cplx eval(const std::function<cplx(const Letter&)>& value) const;

  private:
    Terms terms_;
};

Monomial monomial(const std::vector<std::pair<Letter, int>>& factors);
Monomial mono_mul(const Monomial& x, const Monomial& y);
std::string render(const CPoly& p);
CPoly parse_cpoly(const std::string& s);

CPoly abelianize(const NCPoly& p);

} // namespace cmze
