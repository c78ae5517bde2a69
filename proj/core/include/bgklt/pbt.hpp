#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bgklt/mandelstam.hpp"
#include "bgklt/words.hpp"

namespace bgklt::pbt {

/// Planar binary tree: a leaf or an ordered pair of subtrees.
class Tree {
  public:
    static Tree leaf();
    static Tree node(const Tree& left, const Tree& right);

    bool is_leaf() const { return node_->left == nullptr; }
    Tree left() const { return Tree(node_->left); }
    Tree right() const { return Tree(node_->right); }
    int leaves() const { return node_->leaves; }

    /// Nested parentheses over leaf markers, e.g. "((*,*),*)".
    std::string str() const;
    /// Same shape with the letters of w at the leaves, e.g. "((1,2),3)".
    std::string str_labelled(words::Word w) const;

    bool operator==(const Tree& o) const { return str() == o.str(); }

  private:
    struct Node {
        std::shared_ptr<const Node> left, right;
        int leaves = 1;
    };
    explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// All trees with n leaves, Catalan(n-1) of them, ordered recursively
/// by left-subtree leaf count ascending.
std::vector<Tree> enumerate(int n, int bound = 10);

/// The single-tree pole map: 1 / prod of s_P over internal vertices.
mandelstam::MRat phi_tree(words::Word p, const Tree& t);

/// Bracketing mirroring the tree shape plus the collected poles.
std::pair<words::Bracketing, mandelstam::PoleProd> b_tree(words::Word p, const Tree& t);

/// Glues the roots: graft(t1, t2) = node(t1, t2).
Tree graft(const Tree& t1, const Tree& t2);

}  // namespace bgklt::pbt
