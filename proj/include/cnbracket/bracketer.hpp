#ifndef CNBRACKET_BRACKETER_HPP
#define CNBRACKET_BRACKETER_HPP

#include <algorithm>
#include <cmath>
#include <array>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cnbracket/association.hpp"
#include "cnbracket/error.hpp"
#include "cnbracket/thesaurus.hpp"

namespace cnbracket {

/// Immutable binary bracketing over a noun sequence. Subtrees are shared,
/// so copies are cheap.
class BracketTree {
 public:
  static BracketTree leaf(std::string noun) {
    auto n = std::make_shared<Node>();
    n->head = noun;
    n->noun = std::move(noun);
    n->leaf_count = 1;
    return BracketTree(std::move(n));
  }

  static BracketTree node(const BracketTree& left, const BracketTree& right) {
    auto n = std::make_shared<Node>();
    n->head = right.head();
    n->left = left.node_;
    n->right = right.node_;
    n->leaf_count = left.leaf_count() + right.leaf_count();
    return BracketTree(std::move(n));
  }

  bool is_leaf() const { return !node_->left; }
  /// The leaf's noun; empty for internal nodes.
  const std::string& noun() const { return node_->noun; }
  /// Head of the right child, recursively; the noun itself for a leaf.
  const std::string& head() const { return node_->head; }
  std::size_t leaf_count() const { return node_->leaf_count; }

  BracketTree left() const { return child(node_->left); }
  BracketTree right() const { return child(node_->right); }

  /// In-order leaves.
  std::vector<std::string> leaves() const {
    std::vector<std::string> out;
    collect(*node_, out);
    return out;
  }

  /// Edges on the path from the root following left children.
  std::size_t left_spine_depth() const {
    std::size_t d = 0;
    for (const Node* n = node_.get(); n->left; n = n->left.get()) ++d;
    return d;
  }

  /// Nested-bracket form, e.g. "[[fruit tree] farmer]".
  std::string to_string() const {
    std::string out;
    render(*node_, out);
    return out;
  }

  friend bool operator==(const BracketTree& a, const BracketTree& b) {
    return a.to_string() == b.to_string();
  }

 private:
  struct Node {
    std::string noun;
    std::string head;
    std::shared_ptr<const Node> left, right;
    std::size_t leaf_count = 0;
  };

  explicit BracketTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static BracketTree child(const std::shared_ptr<const Node>& n) {
    if (!n) throw std::logic_error("leaf has no children");
    return BracketTree(n);
  }

  static void collect(const Node& n, std::vector<std::string>& out) {
    if (!n.left) {
      out.push_back(n.noun);
      return;
    }
    collect(*n.left, out);
    collect(*n.right, out);
  }

  static void render(const Node& n, std::string& out) {
    if (!n.left) {
      out += n.noun;
      return;
    }
    out += '[';
    render(*n.left, out);
    out += ' ';
    render(*n.right, out);
    out += ']';
  }

  std::shared_ptr<const Node> node_;
};

struct BracketOptions {
  double left_bias = 1.0;          // multiplier on left attachments
  std::size_t max_length = 8;      // enumeration cap
};

/// The strongest category-level association between two words, with the
/// categories that realise it.
struct PairEvidence {
  double value = 0.0;
  CategoryId modifier_category{};
  CategoryId head_category{};
};

/// max over S containing u, T containing v of CA(S, T). Ties go to the
/// smallest (S, T).
inline PairEvidence best_pair_ca(const AssociationModel& m,
                                 const Thesaurus& th, const std::string& u,
                                 const std::string& v) {
  const auto& us = th.categories_of(u);
  const auto& vs = th.categories_of(v);
  if (us.empty()) throw WordNotInThesaurus(u);
  if (vs.empty()) throw WordNotInThesaurus(v);
  PairEvidence best{-1.0, {}, {}};
  for (CategoryId s : us)
    for (CategoryId t : vs) {
      double ca = m.conceptual_association(s, t);
      if (ca > best.value) best = {ca, s, t};
    }
  return best;
}

enum class Bracketing { Left, Right };

/// Scores within this relative distance count as tied. Products of the same
/// factors taken in a different order can differ in the last bit.
inline constexpr double kTieTolerance = 1e-12;

inline bool same_score(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

inline char to_char(Bracketing b) { return b == Bracketing::Left ? 'L' : 'R'; }

/// One candidate attachment of w1 to w_position.
struct Attachment {
  std::size_t position = 0;  // 2 or 3
  PairEvidence evidence;
  double score = 0.0;  // evidence.value, times left_bias for position 2
};

struct DecisionTrace {
  std::array<Attachment, 2> candidates;  // positions 2 and 3
  std::size_t chosen = 2;
  bool tie = false;
};

struct TripleAnalysis {
  Bracketing bracketing = Bracketing::Left;
  DecisionTrace trace;
  BracketTree tree;
};

/// Attaches w1 to whichever of w2, w3 it associates with more strongly:
/// w2 gives [[w1 w2] w3], w3 gives [w1 [w2 w3]]. Exact ties go left.
inline TripleAnalysis analyse_triple(const AssociationModel& m,
                                     const Thesaurus& th, const std::string& w1,
                                     const std::string& w2,
                                     const std::string& w3,
                                     double left_bias = 1.0) {
  for (const auto* w : {&w1, &w2, &w3})
    if (!th.contains(*w)) throw WordNotInThesaurus(*w);
  auto left = best_pair_ca(m, th, w1, w2);
  auto right = best_pair_ca(m, th, w1, w3);

  DecisionTrace trace;
  trace.candidates[0] = {2, left, left.value * left_bias};
  trace.candidates[1] = {3, right, right.value};
  trace.tie = same_score(trace.candidates[0].score, trace.candidates[1].score);
  const bool go_left =
      trace.tie || trace.candidates[0].score > trace.candidates[1].score;
  trace.chosen = go_left ? 2 : 3;

  auto l1 = BracketTree::leaf(w1), l2 = BracketTree::leaf(w2),
       l3 = BracketTree::leaf(w3);
  return {go_left ? Bracketing::Left : Bracketing::Right, trace,
          go_left ? BracketTree::node(BracketTree::node(l1, l2), l3)
                  : BracketTree::node(l1, BracketTree::node(l2, l3))};
}

/// Every binary tree over `nouns` in order: Catalan(n-1) of them. Order is
/// recursive, by split point ascending (left constituent size 1, 2, ...).
inline std::vector<BracketTree> enumerate_bracketings(
    std::span<const std::string> nouns, std::size_t cap = 8) {
  const std::size_t n = nouns.size();
  if (n == 0) throw std::invalid_argument("empty noun sequence");
  if (n > cap) throw SequenceTooLong(n, cap);

  // table[i][len-1]: trees over nouns[i, i+len)
  std::vector<std::vector<std::vector<BracketTree>>> table(
      n, std::vector<std::vector<BracketTree>>(n));
  for (std::size_t i = 0; i < n; ++i)
    table[i][0].push_back(BracketTree::leaf(nouns[i]));
  for (std::size_t len = 2; len <= n; ++len)
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = table[i][len - 1];
      for (std::size_t k = 1; k < len; ++k)
        for (const auto& l : table[i][k - 1])
          for (const auto& r : table[i + k][len - k - 1])
            cell.push_back(BracketTree::node(l, r));
    }
  return std::move(table[0][n - 1]);
}

namespace detail {

/// Memoizes best_pair_ca over head pairs for one compound.
class PairScorer {
 public:
  PairScorer(const AssociationModel& m, const Thesaurus& th)
      : model_(m), thesaurus_(th) {}

  const PairEvidence& operator()(const std::string& u, const std::string& v) {
    auto key = std::make_pair(u, v);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, best_pair_ca(model_, thesaurus_, u, v)).first;
    return it->second;
  }

  /// Product over internal nodes of the head-pair CA; nodes that are the
  /// left child of their parent carry the left bias.
  double score(const BracketTree& t, double left_bias,
               bool is_left_child = false) {
    if (t.is_leaf()) return 1.0;
    auto l = t.left();
    auto r = t.right();
    double s = score(l, left_bias, true) * score(r, left_bias, false);
    s *= (*this)(l.head(), r.head()).value;
    if (is_left_child) s *= left_bias;
    return s;
  }

 private:
  const AssociationModel& model_;
  const Thesaurus& thesaurus_;
  std::map<std::pair<std::string, std::string>, PairEvidence> cache_;
};

inline void check_leaves(const Thesaurus& th,
                         const std::vector<std::string>& leaves) {
  for (const auto& w : leaves)
    if (!th.contains(w)) throw WordNotInThesaurus(w);
}

}  // namespace detail

/// Product over internal nodes of best_pair_ca(head(left), head(right)).
inline double score_bracketing(const AssociationModel& m, const Thesaurus& th,
                               const BracketTree& tree,
                               double left_bias = 1.0) {
  detail::check_leaves(th, tree.leaves());
  detail::PairScorer scorer(m, th);
  return scorer.score(tree, left_bias);
}

/// Evidence behind one internal node.
struct NodeEvidence {
  std::string left_head;
  std::string right_head;
  PairEvidence evidence;
};

/// Per internal node, bottom-up left to right.
inline std::vector<NodeEvidence> explain(const AssociationModel& m,
                                         const Thesaurus& th,
                                         const BracketTree& tree) {
  std::vector<NodeEvidence> out;
  auto visit = [&](auto&& self, const BracketTree& t) -> void {
    if (t.is_leaf()) return;
    auto l = t.left();
    auto r = t.right();
    self(self, l);
    self(self, r);
    out.push_back({l.head(), r.head(), best_pair_ca(m, th, l.head(), r.head())});
  };
  visit(visit, tree);
  return out;
}

struct ScoredTree {
  BracketTree tree;
  double score = 0.0;
};

struct CompoundAnalysis {
  BracketTree best;
  double score = 0.0;
  std::vector<ScoredTree> ranked;  // best first
};

/// Picks the bracketing whose product of head-pair associations is largest.
/// Ties prefer the deeper left spine, then enumeration order.
inline CompoundAnalysis analyse_compound(const AssociationModel& m,
                                         const Thesaurus& th,
                                         std::span<const std::string> nouns,
                                         const BracketOptions& opts = {}) {
  if (nouns.size() < 2)
    throw std::invalid_argument("a compound needs at least two nouns");
  if (nouns.size() > opts.max_length)
    throw SequenceTooLong(nouns.size(), opts.max_length);
  detail::check_leaves(th, {nouns.begin(), nouns.end()});

  auto trees = enumerate_bracketings(nouns, opts.max_length);
  detail::PairScorer scorer(m, th);
  struct Ranked {
    ScoredTree scored;
    std::size_t depth;
    std::size_t index;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i)
    ranked.push_back({{trees[i], scorer.score(trees[i], opts.left_bias)},
                      trees[i].left_spine_depth(),
                      i});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked& a, const Ranked& b) {
                     return a.scored.score > b.scored.score;
                   });
  // Among trees tied with the top score, the deepest left spine wins, then
  // the earliest in enumeration order.
  auto best = ranked.begin();
  for (auto it = ranked.begin(); it != ranked.end(); ++it) {
    if (!same_score(it->scored.score, ranked.front().scored.score)) continue;
    if (it->depth > best->depth ||
        (it->depth == best->depth && it->index < best->index))
      best = it;
  }
  std::rotate(ranked.begin(), best, best + 1);

  CompoundAnalysis out{ranked.front().scored.tree, ranked.front().scored.score,
                       {}};
  out.ranked.reserve(ranked.size());
  for (auto& r : ranked) out.ranked.push_back(std::move(r.scored));
  return out;
}

}  // namespace cnbracket

#endif  // CNBRACKET_BRACKETER_HPP
