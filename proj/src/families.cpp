#include "cmze/families.hpp"

#include <algorithm>
#include <cstdlib>

namespace cmze {

int max_order() {
    if (const char* env = std::getenv("CMZE_MAX_ORDER")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 0 || v > 64)
            throw std::invalid_argument(std::string("CMZE_MAX_ORDER must be an integer in [0, 64], got '") + env + "'");
        return static_cast<int>(v);
    }
    return 12;
}

void check_order(int n) {
    if (n < 0) throw std::invalid_argument("order must be nonnegative, got " + std::to_string(n));
    int cap = max_order();
    if (n > cap)
        throw std::invalid_argument("order " + std::to_string(n) + " exceeds the cap " + std::to_string(cap) +
                                    " (set CMZE_MAX_ORDER to raise it)");
}

Rat factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

Rat binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return Rat(c);
}

namespace {

void extend(int rest, int k, Composition& cur, std::vector<Composition>& out) {
    if (rest == 0) {
        if (k < 0 || static_cast<int>(cur.size()) == k) out.push_back(cur);
        return;
    }
    if (k >= 0 && static_cast<int>(cur.size()) >= k) return;
    for (int j = 1; j <= rest; ++j) {
        cur.push_back(j);
        extend(rest - j, k, cur, out);
        cur.pop_back();
    }
}

bool colex_less(const Composition& x, const Composition& y) {
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

} // namespace

std::vector<Composition> compositions(int n, int k) {
    if (n < 0) throw std::invalid_argument("negative composition total");
    std::vector<Composition> out;
    Composition cur;
    extend(n, k, cur, out);
    std::sort(out.begin(), out.end(), colex_less);
    return out;
}

Rat kappa(const Composition& c) {
    if (c.empty()) throw std::invalid_argument("kappa of an empty composition");
    Rat num = 1, den = 1;
    int partial = 0;
    for (int j : c) {
        if (j < 1) throw std::invalid_argument("composition parts must be positive");
        partial += j;
        num *= j;
        den *= partial;
    }
    return num / den;
}

Rat multinomial(const Composition& c) {
    if (c.empty()) throw std::invalid_argument("multinomial of an empty composition");
    int n = 0;
    Rat den = 1;
    for (int j : c) {
        if (j < 1) throw std::invalid_argument("composition parts must be positive");
        n += j;
        den *= factorial(j);
    }
    return factorial(n) / den;
}

Word composition_word(const Composition& c, std::uint8_t alpha) {
    Word w;
    for (int j : c) w.push_back(letter(alpha, j));
    return w;
}

Family parse_family(const std::string& name) {
    if (name == "bell") return Family::Bell;
    if (name == "ncbell1") return Family::NCBell1;
    if (name == "ncbell2") return Family::NCBell2;
    if (name == "bipart") return Family::NCBipart;
    if (name == "cbipart") return Family::CBipart;
    throw std::invalid_argument("unknown family '" + name + "'");
}

namespace {

void check_nk(int n, int k) {
    check_order(n);
    if (k < 0 || k > n) throw std::invalid_argument("partial index k must satisfy 0 <= k <= n");
}

// integer partitions as nondecreasing compositions
std::vector<Composition> partitions(int n, int k) {
    std::vector<Composition> out;
    for (auto& c : compositions(n, k))
        if (std::is_sorted(c.begin(), c.end())) out.push_back(c);
    return out;
}

CPoly cmono(const Composition& c, std::uint8_t alpha, const Rat& coef) {
    std::vector<std::pair<Letter, int>> f;
    for (int j : c) f.emplace_back(letter(alpha, j), 1);
    return CPoly(monomial(f), coef);
}

} // namespace

CPoly bell_partial(int n, int k) {
    check_nk(n, k);
    CPoly out;
    // n! / prod (j_i! (i!)^{m_i} m_i!) over partitions with multiplicities m_i
    for (const auto& p : partitions(n, k)) {
        Rat coef = factorial(n);
        for (int j : p) coef /= factorial(j);
        for (std::size_t i = 0; i < p.size();) {
            std::size_t e = i;
            while (e < p.size() && p[e] == p[i]) ++e;
            coef /= factorial(static_cast<int>(e - i));
            i = e;
        }
        out += cmono(p, ALPHA_X, coef);
    }
    return out;
}

CPoly bell(int n) {
    check_order(n);
    CPoly out;
    for (int k = 0; k <= n; ++k) out += bell_partial(n, k);
    return out;
}

NCPoly ncbell1_partial(int n, int k, std::uint8_t alpha) {
    check_nk(n, k);
    NCPoly out;
    for (const auto& c : compositions(n, k))
        out.add_term(composition_word(c, alpha), c.empty() ? Rat(1) : kappa(c) * multinomial(c));
    return out;
}

NCPoly ncbell1(int n, std::uint8_t alpha) {
    check_order(n);
    NCPoly out;
    for (int k = 0; k <= n; ++k) out += ncbell1_partial(n, k, alpha);
    return out;
}

NCPoly ncbell1_recurrence(int n, std::uint8_t alpha) {
    check_order(n);
    NCPoly cur = NCPoly::identity();
    NCPoly a1 = NCPoly::from(letter(alpha, 1));
    for (int i = 0; i < n; ++i) cur = a1 * cur + derive(cur);
    return cur;
}

NCPoly ncbell1_binomial(int n, std::uint8_t alpha) {
    check_order(n);
    std::vector<NCPoly> b{NCPoly::identity()};
    for (int m = 0; m < n; ++m) {
        NCPoly next;
        for (int k = 0; k <= m; ++k) next += binomial(m, k) * b[k] * NCPoly::from(letter(alpha, m - k + 1));
        b.push_back(next);
    }
    return b[n];
}

NCPoly ncbell2_partial(int n, int k, std::uint8_t alpha) {
    check_nk(n, k);
    NCPoly out;
    for (const auto& c : compositions(n, k))
        out.add_term(composition_word(c, alpha), c.empty() ? Rat(1) : multinomial(c) / factorial(k));
    return out;
}

NCPoly ncbell2(int n, std::uint8_t alpha) {
    check_order(n);
    NCPoly out;
    for (int k = 0; k <= n; ++k) out += ncbell2_partial(n, k, alpha);
    return out;
}

NCPoly ncbell2_partial_genfun(int n, int k, std::uint8_t alpha) {
    check_nk(n, k);
    // series[i] = coefficient of t^i in A(t)^p, built up one factor at a time
    std::vector<NCPoly> series(n + 1);
    series[0] = NCPoly::identity();
    for (int p = 0; p < k; ++p) {
        std::vector<NCPoly> next(n + 1);
        for (int i = 0; i <= n; ++i)
            for (int j = 1; i + j <= n; ++j)
                next[i + j] += series[i] * NCPoly::from(letter(alpha, j)) * (1 / factorial(j));
        series = std::move(next);
    }
    return series[n] * (factorial(n) / factorial(k));
}

NCPoly bipart_partial(int n, int k, std::uint8_t alpha) {
    check_nk(n, k);
    NCPoly out;
    Rat sign = k % 2 == 1 ? 1 : -1;
    if (k == 0) sign = 1;
    for (const auto& c : compositions(n, k)) out.add_term(composition_word(c, alpha), sign);
    return out;
}

NCPoly bipart(int n, std::uint8_t alpha) {
    check_order(n);
    NCPoly out;
    for (int k = 0; k <= n; ++k) out += bipart_partial(n, k, alpha);
    return out;
}

NCPoly bipart_recurrence(int n, std::uint8_t alpha) {
    check_order(n);
    std::vector<NCPoly> p{NCPoly::identity()};
    for (int m = 1; m <= n; ++m) {
        NCPoly next = NCPoly::from(letter(alpha, m));
        for (int k = 1; k < m; ++k) next -= NCPoly::from(letter(alpha, m - k)) * p[k];
        p.push_back(next);
    }
    return p[n];
}

CPoly cbipart_partial(int n, int k) {
    check_nk(n, k);
    CPoly out;
    Rat sign = (k == 0 || k % 2 == 1) ? 1 : -1;
    // bracket coefficient: number of distinct orderings of the multiset
    for (const auto& p : partitions(n, k)) {
        Rat coef = factorial(k);
        for (std::size_t i = 0; i < p.size();) {
            std::size_t e = i;
            while (e < p.size() && p[e] == p[i]) ++e;
            coef /= factorial(static_cast<int>(e - i));
            i = e;
        }
        out += cmono(p, ALPHA_B, sign * coef);
    }
    return out;
}

CPoly cbipart(int n) {
    check_order(n);
    CPoly out;
    for (int k = 0; k <= n; ++k) out += cbipart_partial(n, k);
    return out;
}

CPoly cbipart_recurrence(int n) {
    check_order(n);
    std::vector<CPoly> p{CPoly(Rat(1))};
    for (int m = 1; m <= n; ++m) {
        CPoly next = CPoly::var(b(m));
        for (int k = 1; k < m; ++k) next -= CPoly::var(b(k)) * p[m - k];
        p.push_back(next);
    }
    return p[n];
}

NCPoly nc_family(Family f, int n, int k, std::uint8_t alpha) {
    switch (f) {
    case Family::NCBell1: return k < 0 ? ncbell1(n, alpha) : ncbell1_partial(n, k, alpha);
    case Family::NCBell2: return k < 0 ? ncbell2(n, alpha) : ncbell2_partial(n, k, alpha);
    case Family::NCBipart: return k < 0 ? bipart(n, alpha) : bipart_partial(n, k, alpha);
    default: throw std::invalid_argument("family is commutative");
    }
}

CPoly c_family(Family f, int n, int k) {
    switch (f) {
    case Family::Bell: return k < 0 ? bell(n) : bell_partial(n, k);
    case Family::CBipart: return k < 0 ? cbipart(n) : cbipart_partial(n, k);
    default: throw std::invalid_argument("family is noncommutative");
    }
}

} // namespace cmze
