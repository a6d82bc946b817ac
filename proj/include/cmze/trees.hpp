#pragma once
// Planar layered trees, forests, sprouting and grafting.
//
// A tree is stored by its layers along the first-child path, deepest first.
// Layer i carries c_i children; all children except the first are leaves,
// so the tree spells the word a_{c_1} a_{c_2} ... a_{c_k} (root rightmost).

#include <map>
#include <string>
#include <vector>

#include "cmze/word_equation.hpp"

namespace cmze {

struct Layer {
    int children = 1;
    bool inv = false; // inverse unit, spelled [!...]
    int color = 0;    // 0 = undecorated

    auto operator<=>(const Layer&) const = default;
};

struct Tree {
    std::vector<Layer> layers; // empty = single node

    int size() const;   // node count - 1
    int height() const { return static_cast<int>(layers.size()); }
    std::string key() const; // canonical nested brackets
    bool operator<(const Tree& o) const { return key() < o.key(); }
    bool operator==(const Tree& o) const { return layers == o.layers; }
};

Tree parse_tree(const std::string& s);
Tree chain(int edges);        // a1^edges
Tree claw(int leaves);        // a_leaves
Tree inverse_unit(int children = 1);

using Forest = std::map<Tree, Rat>;

void add_tree(Forest& f, const Tree& t, const Rat& w);
Forest seed();
Forest operator+(const Forest& x, const Forest& y);
Forest operator-(const Forest& x, const Forest& y);
Forest scale(const Forest& f, const Rat& c);
Forest height_part(const Forest& f, int k);

// all germinations and forks, de-duplicated with unit weights
Forest sprout(const Forest& f);
// same moves, weights multiplied and accumulated
Forest sprout_counted(const Forest& f);

enum class TreeFamily { Type1, Type2, Bipart };
TreeFamily parse_tree_family(const std::string& name);
// rescales weights of a unit-weight forest of size n
Forest weight_type1(const Forest& f);
Forest weight_type2(const Forest& f);
Forest weight_bipart(const Forest& f);
Forest forest_family(TreeFamily kind, int n);

Word tree_to_word(const Tree& t, std::uint8_t alpha = ALPHA_A);
NCPoly forest_to_polynomial(const Forest& f, std::uint8_t alpha = ALPHA_A);
Tree word_to_tree(const Word& w);

// stacks g above f: word(f graft g) = word(f) word(g)
Tree right_graft(const Tree& x, const Tree& y);
Forest right_graft(const Forest& f, const Forest& g);

// forests for F_0..F_N; claw_i reads as b_i = P L^i P and the inverse unit as b1^-1
std::vector<Forest> tree_solution_F(int order);

std::string render_ascii(const Forest& f);
nlohmann::json forest_json(const Forest& f);

} // namespace cmze
