#include "cmze/trees.hpp"

#include <set>

namespace cmze {

int Tree::size() const {
    int s = 0;
    for (const auto& l : layers) s += l.inv ? -l.children : l.children;
    return s;
}

std::string Tree::key() const {
    std::string s = "[]";
    for (const auto& l : layers) {
        std::string open = "[";
        if (l.inv) open += "!";
        if (l.color != 0) open += "{" + std::to_string(l.color) + "}";
        std::string body = s;
        for (int i = 1; i < l.children; ++i) body += "[]";
        s = open + body + "]";
    }
    return s;
}

namespace {

struct Node {
    bool inv = false;
    int color = 0;
    std::vector<Node> kids;
};

Node parse_node(const std::string& s, std::size_t& pos) {
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("tree parse error at " + std::to_string(pos) + " in '" + s + "': " + what);
    };
    if (pos >= s.size() || s[pos] != '[') fail("expected '['");
    ++pos;
    Node n;
    if (pos < s.size() && s[pos] == '!') n.inv = true, ++pos;
    if (pos < s.size() && s[pos] == '{') {
        std::size_t close = s.find('}', pos);
        if (close == std::string::npos) fail("unclosed color tag");
        n.color = std::stoi(s.substr(pos + 1, close - pos - 1));
        if (n.color <= 0) fail("color tags are positive");
        pos = close + 1;
    }
    while (pos < s.size() && s[pos] == '[') n.kids.push_back(parse_node(s, pos));
    if (pos >= s.size() || s[pos] != ']') fail("expected ']'");
    ++pos;
    return n;
}

} // namespace

Tree parse_tree(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::size_t pos = 0;
    Node root = parse_node(s, pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters after tree '" + s + "'");
    std::vector<Layer> rev;
    const Node* cur = &root;
    while (!cur->kids.empty()) {
        for (std::size_t i = 1; i < cur->kids.size(); ++i)
            if (!cur->kids[i].kids.empty() || cur->kids[i].inv || cur->kids[i].color)
                throw std::invalid_argument("only the first child may carry a subtree: '" + s + "'");
        rev.push_back(Layer{static_cast<int>(cur->kids.size()), cur->inv, cur->color});
        cur = &cur->kids[0];
    }
    if (cur->inv || cur->color) throw std::invalid_argument("a leaf cannot be inverted or colored: '" + s + "'");
    Tree t;
    t.layers.assign(rev.rbegin(), rev.rend());
    for (const auto& l : t.layers)
        if (l.inv && l.children > 2) throw std::invalid_argument("inverse units have one or two children");
    return t;
}

Tree chain(int edges) {
    Tree t;
    t.layers.assign(edges, Layer{});
    return t;
}

Tree claw(int leaves) {
    Tree t;
    t.layers.push_back(Layer{leaves});
    return t;
}

Tree inverse_unit(int children) {
    Tree t;
    t.layers.push_back(Layer{children, true});
    return t;
}

void add_tree(Forest& f, const Tree& t, const Rat& w) {
    if (w == 0) return;
    auto [it, fresh] = f.emplace(t, w);
    if (!fresh) {
        it->second += w;
        if (it->second == 0) f.erase(it);
    }
}

Forest seed() { return Forest{{Tree{}, Rat(1)}}; }

Forest operator+(const Forest& x, const Forest& y) {
    Forest out = x;
    for (const auto& [t, w] : y) add_tree(out, t, w);
    return out;
}

Forest operator-(const Forest& x, const Forest& y) {
    Forest out = x;
    for (const auto& [t, w] : y) add_tree(out, t, -w);
    return out;
}

Forest scale(const Forest& f, const Rat& c) {
    Forest out;
    for (const auto& [t, w] : f) add_tree(out, t, w * c);
    return out;
}

Forest height_part(const Forest& f, int k) {
    Forest out;
    for (const auto& [t, w] : f)
        if (t.height() == k) out.emplace(t, w);
    return out;
}

namespace {

std::vector<Tree> moves(const Tree& t) {
    for (const auto& l : t.layers)
        if (l.inv || l.color) throw std::invalid_argument("sprouting is defined on plain trees only");
    std::vector<Tree> out;
    // germination at the apical leaf adds a new deepest layer
    Tree g = t;
    g.layers.insert(g.layers.begin(), Layer{});
    out.push_back(g);
    // forking adds a leaf next to the path child of a layer
    for (std::size_t i = 0; i < t.layers.size(); ++i) {
        Tree k = t;
        k.layers[i].children += 1;
        out.push_back(k);
    }
    return out;
}

} // namespace

Forest sprout(const Forest& f) {
    Forest out;
    for (const auto& [t, w] : f)
        for (const auto& m : moves(t)) out[m] = 1;
    return out;
}

Forest sprout_counted(const Forest& f) {
    Forest out;
    for (const auto& [t, w] : f)
        for (const auto& m : moves(t)) add_tree(out, m, w);
    return out;
}

TreeFamily parse_tree_family(const std::string& name) {
    if (name == "type1") return TreeFamily::Type1;
    if (name == "type2") return TreeFamily::Type2;
    if (name == "bipart") return TreeFamily::Bipart;
    throw std::invalid_argument("unknown tree family '" + name + "'");
}

namespace {

Composition branch_sizes(const Tree& t) {
    Composition c;
    for (const auto& l : t.layers) c.push_back(l.children);
    return c;
}

Forest reweight(const Forest& f, const std::function<Rat(const Composition&)>& rule) {
    Forest out;
    for (const auto& [t, w] : f) {
        Composition c = branch_sizes(t);
        add_tree(out, t, c.empty() ? Rat(1) : rule(c));
    }
    return out;
}

} // namespace

// kappa times multinomial, read in word order
Forest weight_type1(const Forest& f) {
    return reweight(f, [](const Composition& c) -> Rat { return kappa(c) * multinomial(c); });
}

// n! / (k! prod b_j!)
Forest weight_type2(const Forest& f) {
    return reweight(f, [](const Composition& c) -> Rat { return multinomial(c) / factorial(static_cast<int>(c.size())); });
}

// (-1)^(k+1) for k branches
Forest weight_bipart(const Forest& f) {
    return reweight(f, [](const Composition& c) -> Rat { return Rat(c.size() % 2 == 1 ? 1 : -1); });
}

Forest forest_family(TreeFamily kind, int n) {
    check_order(n);
    if (kind == TreeFamily::Type1) {
        Forest f = seed();
        for (int i = 0; i < n; ++i) f = sprout_counted(f);
        return f;
    }
    Forest f = seed();
    for (int i = 0; i < n; ++i) f = sprout(f);
    return kind == TreeFamily::Type2 ? weight_type2(f) : weight_bipart(f);
}

Word tree_to_word(const Tree& t, std::uint8_t alpha) {
    Word w;
    for (const auto& l : t.layers) {
        if (l.color != 0) throw std::invalid_argument("decorated trees have no word image");
        w.push_back(letter(alpha, l.children, l.inv));
    }
    return w;
}

NCPoly forest_to_polynomial(const Forest& f, std::uint8_t alpha) {
    NCPoly p;
    for (const auto& [t, w] : f) p += NCPoly(tree_to_word(t, alpha), w);
    return p;
}

Tree word_to_tree(const Word& w) {
    Tree t;
    for (const auto& l : w) t.layers.push_back(Layer{l.index, l.inv});
    return t;
}

Tree right_graft(const Tree& x, const Tree& y) {
    Tree out = x;
    for (const auto& l : y.layers) {
        if (!out.layers.empty()) {
            const Layer& top = out.layers.back();
            if (top.children == l.children && top.inv != l.inv && top.color == l.color) {
                out.layers.pop_back();
                continue;
            }
        }
        out.layers.push_back(l);
    }
    return out;
}

Forest right_graft(const Forest& f, const Forest& g) {
    Forest out;
    for (const auto& [x, wx] : f)
        for (const auto& [y, wy] : g) add_tree(out, right_graft(x, y), wx * wy);
    return out;
}

std::vector<Forest> tree_solution_F(int order) {
    check_order(order + 2);
    std::vector<Forest> F;
    Forest inv_chain{{inverse_unit(1), Rat(1)}};
    Forest type2_pool;
    for (int n = 0; n <= order; ++n) {
        Forest rest = forest_family(TreeFamily::Bipart, n + 2);
        if (n > 0) {
            Forest b2 = forest_family(TreeFamily::Type2, n);
            for (int k = 1; k < n; ++k) rest = rest - right_graft(F[k], height_part(b2, k));
        }
        for (int i = 0; i < n; ++i) rest = right_graft(rest, inv_chain);
        F.push_back(rest);
    }
    return F;
}

std::string render_ascii(const Forest& f) {
    if (f.empty()) return "0\n";
    std::string out;
    for (const auto& [t, w] : f) out += rat_str(w) + " " + t.key() + "\n";
    return out;
}

nlohmann::json forest_json(const Forest& f) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [t, w] : f) j[t.key()] = {w.get_num().get_si(), w.get_den().get_si()};
    return j;
}

} // namespace cmze
