#include "bgklt/pbt.hpp"

#include <stdexcept>

namespace bgklt::pbt {

Tree Tree::leaf() {
    auto n = std::make_shared<Node>();
    return Tree(std::move(n));
}

Tree Tree::node(const Tree& left, const Tree& right) {
    auto n = std::make_shared<Node>();
    n->left = left.node_;
    n->right = right.node_;
    n->leaves = left.leaves() + right.leaves();
    return Tree(std::move(n));
}

std::string Tree::str() const {
    if (is_leaf()) return "*";
    return "(" + left().str() + "," + right().str() + ")";
}

namespace {
std::string label_rec(const Tree& t, words::Word w, int& pos) {
    if (t.is_leaf()) return std::to_string(w.letter(pos++));
    std::string l = label_rec(t.left(), w, pos);
    std::string r = label_rec(t.right(), w, pos);
    return "(" + l + "," + r + ")";
}
}  // namespace

std::string Tree::str_labelled(words::Word w) const {
    if (w.size() != leaves()) throw std::invalid_argument("word length != leaf count");
    int pos = 0;
    return label_rec(*this, w, pos);
}

std::vector<Tree> enumerate(int n, int bound) {
    if (n < 1 || n > bound) throw std::out_of_range("leaf count out of bounds");
    std::vector<std::vector<Tree>> table(n + 1);
    table[1] = {Tree::leaf()};
    for (int k = 2; k <= n; ++k) {
        for (int lsize = 1; lsize < k; ++lsize)
            for (const Tree& l : table[lsize])
                for (const Tree& r : table[k - lsize]) table[k].push_back(Tree::node(l, r));
    }
    return table[n];
}

namespace {

mandelstam::MRat phi_tree_rec(words::Word p, int pos, const Tree& t) {
    using namespace mandelstam;
    if (t.is_leaf()) return MRat::one();
    std::uint32_t mask = 0;
    for (int i = 0; i < t.leaves(); ++i) mask |= 1u << p.letter(pos + i);
    MRat l = phi_tree_rec(p, pos, t.left());
    MRat r = phi_tree_rec(p, pos + t.left().leaves(), t.right());
    return rat_div_pole(rat_mul(l, r), mask);
}

std::pair<words::Bracketing, mandelstam::PoleProd> b_tree_rec(words::Word p, int pos,
                                                              const Tree& t) {
    using namespace mandelstam;
    if (t.is_leaf()) return {words::Bracketing::leaf(p.letter(pos)), {}};
    std::uint32_t mask = 0;
    for (int i = 0; i < t.leaves(); ++i) mask |= 1u << p.letter(pos + i);
    auto [bl, dl] = b_tree_rec(p, pos, t.left());
    auto [br, dr] = b_tree_rec(p, pos + t.left().leaves(), t.right());
    PoleProd d = pole_mul(dl, dr);
    auto it = std::upper_bound(d.begin(), d.end(), mask, pole_less);
    d.insert(it, mask);
    return {words::Bracketing::pair(bl, br), std::move(d)};
}

}  // namespace

mandelstam::MRat phi_tree(words::Word p, const Tree& t) {
    if (p.size() != t.leaves()) throw std::invalid_argument("word length != leaf count");
    return phi_tree_rec(p, 0, t);
}

std::pair<words::Bracketing, mandelstam::PoleProd> b_tree(words::Word p, const Tree& t) {
    if (p.size() != t.leaves()) throw std::invalid_argument("word length != leaf count");
    return b_tree_rec(p, 0, t);
}

Tree graft(const Tree& t1, const Tree& t2) { return Tree::node(t1, t2); }

}  // namespace bgklt::pbt
