#include "cmze/word_equation.hpp"

#include <map>

namespace cmze {

NCPoly drop_odd(const NCPoly& p, const std::vector<std::uint8_t>& alphas) {
    return p.filter([&](const Word& w) {
        for (const auto& l : w)
            for (auto a : alphas)
                if (l.alpha == a && l.index % 2 == 1) return false;
        return true;
    });
}

WordProblem family_problem(Family qb, std::uint8_t alpha_b, Family qa, std::uint8_t alpha_a, int m, int wcase,
                           int order) {
    if (m < 0) throw std::invalid_argument("offset m must be nonnegative");
    WordProblem pr;
    pr.lhs = [=](int n) { return nc_family(qb, n + m, -1, alpha_b); };
    pr.qa = [=](int n, int k) { return nc_family(qa, n, k, alpha_a); };
    pr.alpha_a = alpha_a;
    pr.wcase = wcase;
    pr.order = order;
    if (wcase == 2) {
        if (m % 2 != 0) throw std::invalid_argument("case 2 needs an even offset m");
        pr.zero_odd = {alpha_a, alpha_b};
    }
    return pr;
}

namespace {

void validate(const WordProblem& pr) {
    if (pr.wcase != 1 && pr.wcase != 2) throw std::invalid_argument("case must be 1 or 2");
    check_order(pr.wcase == 2 ? 2 * pr.order : pr.order);
    if (pr.wcase == 2 && pr.zero_odd.empty()) throw std::invalid_argument("case 2 needs the vanishing alphabets");
}

NCPoly filtered(const WordProblem& pr, const NCPoly& p) { return pr.wcase == 2 ? drop_odd(p, pr.zero_odd) : p; }

NCPoly inv_power(const WordProblem& pr, int n) {
    int idx = pr.wcase == 2 ? 2 : 1;
    return NCPoly::from(letter(pr.alpha_a, idx, true)).pow(n);
}

// order at which f_k is determined, and the step in n between equations
int pivot_order(const WordProblem& pr, int k) { return pr.wcase == 2 ? 2 * k : k; }

NCPoly combine(const WordProblem& pr, const NCPoly& q, const NCPoly& f) { return pr.right ? q * f : f * q; }

} // namespace

Ladder solve_words(const WordProblem& pr) {
    validate(pr);
    Ladder f;
    f.push_back(filtered(pr, pr.lhs(0)));
    int idx = pr.wcase == 2 ? 2 : 1;
    for (int k = 1; k <= pr.order; ++k) {
        int n = pivot_order(pr, k);
        // in case 2 the odd orders must be empty on both sides
        if (pr.wcase == 2) {
            NCPoly odd = filtered(pr, pr.lhs(n - 1));
            if (!odd.is_zero())
                throw std::domain_error("case 2: nonzero left side at odd order " + std::to_string(n - 1));
        }
        NCPoly rest = filtered(pr, pr.lhs(n));
        for (int j = 1; j < k; ++j) rest -= combine(pr, filtered(pr, pr.qa(n, j)), f[j]);
        NCPoly top = filtered(pr, pr.qa(n, k));
        Word pivot(k, letter(pr.alpha_a, idx));
        Rat c = top.coeff(pivot);
        if (c == 0 || top.size() != 1)
            throw std::domain_error("non-invertible configuration: Q^a_{" + std::to_string(n) + "," +
                                    std::to_string(k) + "} is not a multiple of the invertible letter power");
        NCPoly fk = pr.right ? inv_power(pr, k) * rest : rest * inv_power(pr, k);
        f.push_back(fk * (1 / c));
    }
    return f;
}

NCPoly word_residual(const WordProblem& pr, const Ladder& f, int n) {
    NCPoly r = filtered(pr, pr.lhs(n));
    if (n == 0) return r - f[0];
    for (std::size_t k = 1; k < f.size() && static_cast<int>(k) <= n; ++k)
        r -= combine(pr, filtered(pr, pr.qa(n, static_cast<int>(k))), f[k]);
    return r;
}

// ---- commutative ladders ----

namespace {

Letter g(int j) { return letter(ALPHA_G, j); }

// b_i and x_i both go to gamma_{i-1}
CPoly to_gamma(const CPoly& p) {
    return p.substitute([](const Letter& l) {
        if (l.alpha == ALPHA_B || l.alpha == ALPHA_X) return CPoly::var(g(l.index - 1));
        return CPoly::var(l);
    });
}

CPoly drop_even_gamma(const CPoly& p) {
    return p.drop([](const Letter& l) { return l.alpha == ALPHA_G && l.index % 2 == 0; });
}

} // namespace

std::vector<CPoly> laurent_fk(int order, bool skew, SkewRule rule) {
    check_order(order);
    std::vector<CPoly> f;
    if (!skew) {
        check_order(order + 2);
        f.push_back(to_gamma(cbipart(2)));
        for (int n = 1; n <= order; ++n) {
            CPoly rest = to_gamma(cbipart(n + 2));
            for (int k = 1; k < n; ++k) rest -= f[k] * to_gamma(bell_partial(n, k));
            f.push_back(rest * CPoly::var(g(0), -n));
        }
        return f;
    }
    if (rule == SkewRule::Shifted) {
        auto base = laurent_fk(order > 0 ? order - 1 : 0, false);
        f.push_back(CPoly::var(g(1)));
        for (int k = 1; k <= order; ++k)
            f.push_back(base[k - 1].substitute([](const Letter& l) { return CPoly::var(g(2 * l.index + 1)); }));
        return f;
    }
    check_order(2 * order + 2);
    f.push_back(drop_even_gamma(to_gamma(cbipart(2))));
    for (int k = 1; k <= order; ++k) {
        CPoly rest = drop_even_gamma(to_gamma(cbipart(2 * k + 2)));
        for (int j = 1; j < k; ++j) rest -= f[j] * drop_even_gamma(to_gamma(bell_partial(2 * k, j)));
        Rat ck = factorial(2 * k) / (factorial(k) * Rat(mpz_class(1) << k));
        f.push_back(rest * CPoly::var(g(1), -k) * (1 / ck));
    }
    return f;
}

// ---- operator ladders ----

WordProblem operator_problem(int order) {
    return family_problem(Family::NCBipart, ALPHA_B, Family::NCBell2, ALPHA_B, 2, 1, order);
}

Ladder operator_F(int order) { return solve_words(operator_problem(order)); }

WordProblem operator_prime_problem(int order) {
    return family_problem(Family::NCBipart, ALPHA_B, Family::NCBell2, ALPHA_B, 2, 2, order);
}

Ladder corollary_F_prime(int order) { return solve_words(operator_prime_problem(order)); }

namespace {

NCPoly pls() { return NCPoly::from(letter(ALPHA_PLS, 0)); }
NCPoly qlt() { return NCPoly::from(letter(ALPHA_QLT, 0)); }

NCPoly negate_letters(const NCPoly& p) {
    return substitute(p, std::function<NCPoly(const Letter&)>([](const Letter& l) { return -NCPoly::from(l); }));
}

} // namespace

WordProblem td_F_problem(int order) {
    WordProblem pr;
    pr.lhs = [](int n) { return pls() * ncbell1(n, ALPHA_QL); };
    pr.qa = [](int n, int k) { return ncbell2_partial(n, k, ALPHA_PB); };
    pr.alpha_a = ALPHA_PB;
    pr.right = true;
    pr.order = order;
    return pr;
}

WordProblem td_G_problem(int order) {
    WordProblem pr;
    pr.lhs = [](int n) { return negate_letters(ncbell1(n, ALPHA_QL)) * qlt(); };
    pr.qa = [](int n, int k) { return ncbell2_partial(n, k, ALPHA_PB); };
    pr.alpha_a = ALPHA_PB;
    pr.order = order;
    return pr;
}

TimeDependentFG time_dependent_FG(int order) {
    return {solve_words(td_F_problem(order)), solve_words(td_G_problem(order))};
}

// ---- k_{n,m} ----

namespace {

std::string bracket_qword(const Word& qs) {
    std::string s = "<L(s)";
    Word run;
    for (const auto& l : qs) {
        if (l.alpha == ALPHA_QLT) {
            if (!run.empty()) s += render_word(run);
            s += "QL(t)";
            run.clear();
        } else
            run.push_back(l);
    }
    if (!run.empty()) s += render_word(run);
    return s + "v,v>";
}

std::string bracket_pb(int i) {
    auto p = ncbell1(i, ALPHA_L);
    std::string inner = render(p);
    if (p.size() > 1) inner = "(" + inner + ")";
    return "<" + inner + "v,v>";
}

// numerator brackets (sorted) and the power of <L1v,v>
using ScalarKey = std::pair<std::vector<std::string>, int>;

} // namespace

std::string knm_scalar(int n, int m) {
    check_order(std::max(n, m));
    auto fg = time_dependent_FG(std::max(n, m));
    NCPoly prod = fg.F[n] * fg.G[m];
    std::map<ScalarKey, Rat> acc;
    for (const auto& [w, c] : prod.terms()) {
        ScalarKey key{{}, 0};
        bool zero = false;
        for (std::size_t i = 0; i < w.size() && !zero;) {
            const Letter& l = w[i];
            if (l.alpha == ALPHA_PB) {
                if (l.inv)
                    key.second -= 1;
                else if (l.index == 1)
                    key.second += 1;
                else
                    key.first.push_back(bracket_pb(l.index));
                ++i;
                // P on the right of a projected letter annihilates a following Q letter
                if (i < w.size() && (w[i].alpha == ALPHA_QL || w[i].alpha == ALPHA_QLT)) zero = true;
            } else if (l.alpha == ALPHA_PLS) {
                Word qs;
                ++i;
                while (i < w.size() && (w[i].alpha == ALPHA_QL || w[i].alpha == ALPHA_QLT)) qs.push_back(w[i++]);
                key.first.push_back(bracket_qword(qs));
            } else {
                // a word that starts with a Q letter has no P on its left
                zero = true;
            }
        }
        if (zero) continue;
        std::sort(key.first.begin(), key.first.end());
        acc[key] += c;
    }
    std::string out;
    for (const auto& [key, c] : acc) {
        if (c == 0) continue;
        Rat mag = abs(c);
        out += c < 0 ? "-" : (out.empty() ? "" : "+");
        std::string num;
        if (mag != 1) num += rat_str(mag);
        for (const auto& b : key.first) num += b;
        if (key.second > 0)
            num += "<L1v,v>" + (key.second > 1 ? "^" + std::to_string(key.second) : std::string());
        if (num.empty()) num = "1";
        out += num;
        if (key.second < 0)
            out += "/<L1v,v>" + (key.second < -1 ? "^" + std::to_string(-key.second) : std::string());
    }
    return out.empty() ? "0" : out;
}

} // namespace cmze
