#include "cmze/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cmze {

std::string rat_str(const Rat& r) { return r.get_str(); }

Letter letter(std::uint8_t alpha, int index, bool inv) {
    if (alpha > ALPHA_PB) throw std::invalid_argument("unknown alphabet id " + std::to_string(alpha));
    bool indexless = alpha == ALPHA_PLS || alpha == ALPHA_QLT;
    if (indexless ? index != 0 : (alpha == ALPHA_G ? index < 0 : index < 1))
        throw std::invalid_argument("bad letter index " + std::to_string(index));
    if (inv && index != 1 && index != 2)
        throw std::invalid_argument("only index 1 or 2 letters may be inverted");
    if (inv && (alpha == ALPHA_X || alpha == ALPHA_G))
        throw std::invalid_argument("inverse letters live in the word alphabets only");
    return Letter{alpha, static_cast<std::int16_t>(index), inv};
}

int grade(const Word& w) {
    int g = 0;
    for (const auto& l : w) g += l.grade();
    return g;
}

Word concat(const Word& x, const Word& y) {
    Word out = x;
    for (const auto& l : y) {
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word canonical(const Word& w) { return concat(Word{}, w); }

bool WordLess::operator()(const Word& x, const Word& y) const {
    int gx = grade(x), gy = grade(y);
    if (gx != gy) return gx < gy;
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

// ---- text form ----

namespace {

struct Name {
    const char* text;
    std::uint8_t alpha;
    bool indexed;
};

// longest names first so that greedy matching is unambiguous
const Name kNames[] = {
    {"INV", ALPHA_PB, false}, {"PLs", ALPHA_PLS, false}, {"QLt", ALPHA_QLT, false},
    {"QL", ALPHA_QL, true},   {"PB", ALPHA_PB, true},    {"L", ALPHA_L, true},
    {"a", ALPHA_A, true},     {"b", ALPHA_B, true},      {"x", ALPHA_X, true},
    {"g", ALPHA_G, true},
};

std::string base_name(const Letter& l) {
    switch (l.alpha) {
    case ALPHA_A: return "a" + std::to_string(l.index);
    case ALPHA_B: return "b" + std::to_string(l.index);
    case ALPHA_X: return "x" + std::to_string(l.index);
    case ALPHA_G: return "g" + std::to_string(l.index);
    case ALPHA_L: return "L" + std::to_string(l.index);
    case ALPHA_QL: return "QL" + std::to_string(l.index);
    case ALPHA_PLS: return "PLs";
    case ALPHA_QLT: return "QLt";
    case ALPHA_PB:
        if (l.inv && l.index == 1) return "INV";
        return "PB" + std::to_string(l.index);
    }
    throw std::logic_error("unreachable alphabet");
}

bool is_inv_token(const Letter& l) { return l.alpha == ALPHA_PB && l.inv && l.index == 1; }

// power notation for a run of k copies of the letter
std::string render_run(const Letter& l, int k) {
    std::string s = base_name(l);
    bool neg = l.inv && !is_inv_token(l);
    if (neg) return s + "^-" + std::to_string(k);
    if (k > 1) s += "^" + std::to_string(k);
    return s;
}

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at " + std::to_string(pos) + " in '" + s + "': " + what);
    }
    int read_int() {
        std::size_t start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return std::stoi(s.substr(start, pos - start));
    }
};

// reads one letter token with optional exponent, appends to w
bool read_letter_run(Cursor& c, Word& w) {
    for (const auto& n : kNames) {
        std::size_t len = std::char_traits<char>::length(n.text);
        if (c.s.compare(c.pos, len, n.text) != 0) continue;
        if (n.indexed && !(c.pos + len < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos + len]))))
            continue;
        c.pos += len;
        Letter l;
        if (std::string(n.text) == "INV")
            l = letter(ALPHA_PB, 1, true);
        else
            l = letter(n.alpha, n.indexed ? c.read_int() : 0);
        int power = 1;
        if (c.peek() == '^') {
            ++c.pos;
            bool neg = false;
            if (c.peek() == '-') {
                neg = true;
                ++c.pos;
            }
            power = c.read_int();
            if (neg) {
                if (l.inv) c.fail("negative power of an inverse token");
                l = letter(l.alpha, l.index, true);
            }
        }
        for (int i = 0; i < power; ++i) w.push_back(l);
        return true;
    }
    return false;
}

} // namespace

std::string render_letter(const Letter& l) { return render_run(l, 1); }

std::string render_word(const Word& w) {
    if (w.empty()) return "I";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        out += render_run(w[i], static_cast<int>(j - i));
        i = j;
    }
    return out;
}

Word parse_word(const std::string& s) {
    if (s == "I") return {};
    Cursor c{s};
    Word w;
    while (!c.done())
        if (!read_letter_run(c, w)) c.fail("unknown letter");
    return canonical(w);
}

// ---- NCPoly ----

NCPoly::NCPoly(const Word& w, const Rat& c) { add_term(canonical(w), c); }

Rat NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(canonical(w));
    return it == terms_.end() ? Rat(0) : it->second;
}

void NCPoly::add_term(const Word& w, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (fresh) {
        it->second.canonicalize(); // callers may hand in unreduced fractions
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NCPoly& NCPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
}

NCPoly operator*(const NCPoly& x, const NCPoly& y) {
    NCPoly out;
    for (const auto& [wx, cx] : x.terms_)
        for (const auto& [wy, cy] : y.terms_) out.add_term(concat(wx, wy), cx * cy);
    return out;
}

NCPoly NCPoly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power of a polynomial");
    NCPoly out = identity();
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
}

NCPoly NCPoly::filter(const std::function<bool(const Word&)>& pred) const {
    NCPoly out;
    for (const auto& [w, c] : terms_)
        if (pred(w)) out.terms_.emplace(w, c);
    return out;
}

std::string render(const NCPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        Rat mag = abs(c);
        if (c < 0)
            out += "-";
        else if (!first)
            out += "+";
        if (w.empty())
            out += rat_str(mag);
        else {
            if (mag != 1) out += rat_str(mag);
            out += render_word(w);
        }
        first = false;
    }
    return out;
}

NCPoly parse_poly(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    if (s == "0") return {};
    Cursor c{s};
    NCPoly out;
    while (!c.done()) {
        Rat sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            if (c.peek() == '-') sign = -1;
            ++c.pos;
        }
        Rat coef = 1;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            mpz_class num(std::to_string(c.read_int())), den = 1;
            if (c.peek() == '/') {
                ++c.pos;
                den = c.read_int();
            }
            coef = Rat(num, den);
            coef.canonicalize();
            coef.canonicalize();
        }
        Word w;
        if (c.peek() == 'I' && s.compare(c.pos, 3, "INV") != 0) ++c.pos; // explicit identity
        while (!c.done() && c.peek() != '+' && c.peek() != '-')
            if (!read_letter_run(c, w)) c.fail("unknown letter");
        out.add_term(canonical(w), sign * coef);
    }
    return out;
}

nlohmann::json to_json(const NCPoly& p) {
    nlohmann::json j = nlohmann::json::object();
    // machine-size parts as numbers, larger ones as decimal strings
    auto part = [](const mpz_class& z) -> nlohmann::json {
        if (z.fits_slong_p()) return z.get_si();
        return z.get_str();
    };
    for (const auto& [w, c] : p.terms()) j[render_word(w)] = {part(c.get_num()), part(c.get_den())};
    return j;
}

NCPoly poly_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("polynomial json must be an object");
    NCPoly out;
    for (const auto& [key, val] : j.items()) {
        if (!val.is_array() || val.size() != 2) throw std::invalid_argument("coefficient must be [num, den]");
        auto part = [](const nlohmann::json& v) {
            return v.is_string() ? mpz_class(v.get<std::string>()) : mpz_class(std::to_string(v.get<long long>()));
        };
        Rat c(part(val[0]), part(val[1]));
        c.canonicalize();
        out.add_term(parse_word(key), c);
    }
    return out;
}

NCPoly derive(const NCPoly& p) {
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Letter& l = w[i];
            if (l.inv) throw std::domain_error("derivation is undefined on inverse letters");
            if (l.alpha == ALPHA_PLS || l.alpha == ALPHA_QLT || l.alpha == ALPHA_G)
                throw std::domain_error("derivation is undefined on letter " + render_letter(l));
            Word v = w;
            v[i].index = static_cast<std::int16_t>(l.index + 1);
            out.add_term(v, c);
        }
    }
    return out;
}

NCPoly substitute(const NCPoly& p, const std::function<NCPoly(const Letter&)>& image) {
    std::map<Letter, NCPoly> cache;
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        NCPoly term = NCPoly::identity() * c;
        for (const auto& l : w) {
            auto it = cache.find(l);
            if (it == cache.end()) it = cache.emplace(l, image(l)).first;
            term = term * it->second;
        }
        out += term;
    }
    return out;
}

Mat substitute(const NCPoly& p, const std::function<Mat(const Letter&)>& image, int dim) {
    std::map<Letter, Mat> cache;
    Mat out = Mat::Zero(dim, dim);
    for (const auto& [w, c] : p.terms()) {
        Mat term = Mat::Identity(dim, dim);
        for (const auto& l : w) {
            auto it = cache.find(l);
            if (it == cache.end()) {
                Mat m = image(l);
                if (m.rows() != dim || m.cols() != dim)
                    throw std::invalid_argument("image of " + render_letter(l) + " has wrong dimension");
                it = cache.emplace(l, std::move(m)).first;
            }
            term = term * it->second;
        }
        out += to_double(c) * term;
    }
    return out;
}

NCPoly substitute(const NCPoly& p, const std::map<Letter, NCPoly>& images) {
    return substitute(p, std::function<NCPoly(const Letter&)>([&](const Letter& l) {
                          auto it = images.find(l);
                          if (it == images.end()) throw std::invalid_argument("no image for letter " + render_letter(l));
                          return it->second;
                      }));
}

Mat substitute(const NCPoly& p, const std::map<Letter, Mat>& images) {
    if (images.empty()) throw std::invalid_argument("empty image map");
    int dim = static_cast<int>(images.begin()->second.rows());
    return substitute(p,
                      std::function<Mat(const Letter&)>([&](const Letter& l) {
                          auto it = images.find(l);
                          if (it == images.end()) throw std::invalid_argument("no image for letter " + render_letter(l));
                          return it->second;
                      }),
                      dim);
}

// ---- CPoly ----

Monomial monomial(const std::vector<std::pair<Letter, int>>& factors) {
    std::map<Letter, int> acc;
    for (auto [l, e] : factors) {
        if (l.inv) {
            l.inv = false;
            e = -e;
        }
        acc[l] += e;
    }
    Monomial m;
    for (const auto& [l, e] : acc)
        if (e != 0) m.emplace_back(l, e);
    return m;
}

Monomial mono_mul(const Monomial& x, const Monomial& y) {
    Monomial all = x;
    all.insert(all.end(), y.begin(), y.end());
    return monomial(all);
}

CPoly::CPoly(const Rat& c) { add_term({}, c); }
CPoly::CPoly(const Monomial& m, const Rat& c) { add_term(monomial(m), c); }
CPoly CPoly::var(const Letter& l, int power) { return CPoly(monomial({{l, power}}), 1); }

Rat CPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(monomial(m));
    return it == terms_.end() ? Rat(0) : it->second;
}

void CPoly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) {
        it->second.canonicalize();
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

CPoly& CPoly::operator+=(const CPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

CPoly& CPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

CPoly operator*(const CPoly& x, const CPoly& y) {
    CPoly out;
    for (const auto& [mx, cx] : x.terms_)
        for (const auto& [my, cy] : y.terms_) out.add_term(mono_mul(mx, my), cx * cy);
    return out;
}

CPoly CPoly::pow(int n) const {
    if (n >= 0) {
        CPoly out(Rat(1));
        for (int i = 0; i < n; ++i) out = out * *this;
        return out;
    }
    if (terms_.size() != 1) throw std::domain_error("negative power of a non-monomial");
    const auto& [m, c] = *terms_.begin();
    Monomial inv;
    for (const auto& [l, e] : m) inv.emplace_back(l, -e);
    return CPoly(inv, 1 / Rat(c)).pow(-n);
}

CPoly CPoly::drop(const std::function<bool(const Letter&)>& pred) const {
    CPoly out;
    for (const auto& [m, c] : terms_) {
        bool keep = std::none_of(m.begin(), m.end(), [&](const auto& f) { return pred(f.first); });
        if (keep) out.terms_.emplace(m, c);
    }
    return out;
}

CPoly CPoly::substitute(const std::function<CPoly(const Letter&)>& image) const {
    CPoly out;
    for (const auto& [m, c] : terms_) {
        CPoly term(c);
        for (const auto& [l, e] : m) term = term * image(l).pow(e);
        out += term;
    }
    return out;
}

cplx CPoly::eval(const std::function<cplx(const Letter&)>& value) const {
    cplx sum = 0;
    for (const auto& [m, c] : terms_) {
        cplx term = to_double(c);
        for (const auto& [l, e] : m) term *= std::pow(value(l), e);
        sum += term;
    }
    return sum;
}

std::string render(const CPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rat mag = abs(c);
        if (c < 0)
            out += "-";
        else if (!first)
            out += "+";
        if (m.empty() || mag != 1) out += rat_str(mag);
        for (const auto& [l, e] : m) {
            out += base_name(l);
            if (e != 1) out += "^" + std::to_string(e);
        }
        first = false;
    }
    return out;
}

CPoly parse_cpoly(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    if (s == "0") return {};
    Cursor c{s};
    CPoly out;
    while (!c.done()) {
        Rat sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            if (c.peek() == '-') sign = -1;
            ++c.pos;
        }
        Rat coef = 1;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            mpz_class num(std::to_string(c.read_int())), den = 1;
            if (c.peek() == '/') {
                ++c.pos;
                den = c.read_int();
            }
            coef = Rat(num, den);
            coef.canonicalize();
            coef.canonicalize();
        }
        std::vector<std::pair<Letter, int>> factors;
        while (!c.done() && c.peek() != '+' && c.peek() != '-') {
            Word w;
            std::size_t before = c.pos;
            // exponents may be negative here, so parse name and power by hand
            bool matched = false;
            for (const auto& n : kNames) {
                if (!n.indexed) continue;
                std::size_t len = std::char_traits<char>::length(n.text);
                if (c.s.compare(c.pos, len, n.text) != 0) continue;
                if (!(c.pos + len < s.size() && std::isdigit(static_cast<unsigned char>(s[c.pos + len])))) continue;
                c.pos += len;
                Letter l = letter(n.alpha, c.read_int());
                int e = 1;
                if (c.peek() == '^') {
                    ++c.pos;
                    bool neg = c.peek() == '-';
                    if (neg) ++c.pos;
                    e = c.read_int() * (neg ? -1 : 1);
                }
                factors.emplace_back(l, e);
                matched = true;
                break;
            }
            if (!matched || before == c.pos) c.fail("unknown variable");
        }
        out.add_term(monomial(factors), sign * coef);
    }
    return out;
}

CPoly abelianize(const NCPoly& p) {
    CPoly out;
    for (const auto& [w, c] : p.terms()) {
        std::vector<std::pair<Letter, int>> f;
        for (const auto& l : w) f.emplace_back(l, 1);
        out.add_term(monomial(f), c);
    }
    return out;
}

} // namespace cmze
