#include <gtest/gtest.h>

#include <set>

#include "cnbracket/bracketer.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace cnbracket;

namespace {

CategoryId C(int i) { return CategoryId{i}; }

using Words = std::vector<std::string>;

struct Fixture {
  Thesaurus th;
  std::vector<NounPair> pairs;
  AssociationModel model() const { return build_freq(count_pairs(pairs), th); }
};

// CA(w1's category, w2's) = 1/2 and CA(w1's, w3's) = 1/5: "e" sits in two
// categories so one pair puts half its mass on w3's column.
Fixture left_favoring() {
  Fixture f;
  f.th.add_category(C(1), "A", {"wone"});
  f.th.add_category(C(2), "B", {"wtwo"});
  f.th.add_category(C(3), "C", {"wthree", "e"});
  f.th.add_category(C(4), "D", {"d"});
  f.th.add_category(C(5), "E", {"e"});
  f.pairs = {{"wone", "wtwo"}, {"wone", "wthree"}, {"d", "wthree"}, {"d", "e"}};
  return f;
}

// The mirror image: 1/5 for w2, 1/2 for w3.
Fixture right_favoring() {
  Fixture f;
  f.th.add_category(C(1), "A", {"wone"});
  f.th.add_category(C(2), "B", {"wtwo", "e"});
  f.th.add_category(C(3), "C", {"wthree"});
  f.th.add_category(C(4), "D", {"d"});
  f.th.add_category(C(5), "E", {"e"});
  f.pairs = {{"wone", "wtwo"}, {"wone", "wthree"}, {"d", "wtwo"}, {"d", "e"}};
  return f;
}

std::set<std::string> all_strings(const std::vector<BracketTree>& trees) {
  std::set<std::string> out;
  for (const auto& t : trees) out.insert(t.to_string());
  return out;
}

}  // namespace

TEST(BracketTree, HeadsLeavesAndRendering) {
  auto a = BracketTree::leaf("fruit"), b = BracketTree::leaf("tree"),
       c = BracketTree::leaf("farmer");
  auto left = BracketTree::node(BracketTree::node(a, b), c);
  auto right = BracketTree::node(a, BracketTree::node(b, c));
  EXPECT_EQ(left.to_string(), "[[fruit tree] farmer]");
  EXPECT_EQ(right.to_string(), "[fruit [tree farmer]]");
  EXPECT_EQ(left.head(), "farmer");
  EXPECT_EQ(left.left().head(), "tree");
  EXPECT_EQ(left.leaves(), (Words{"fruit", "tree", "farmer"}));
  EXPECT_EQ(left.left_spine_depth(), 2u);
  EXPECT_EQ(right.left_spine_depth(), 1u);
  EXPECT_EQ(a.head(), "fruit");
  EXPECT_THROW(a.left(), std::logic_error);
}

TEST(BestPairCa, SingleCategories) {
  auto f = left_favoring();
  auto m = f.model();
  auto e = best_pair_ca(m, f.th, "wone", "wtwo");
  EXPECT_DOUBLE_EQ(e.value, 0.5);
  EXPECT_EQ(e.modifier_category, C(1));
  EXPECT_EQ(e.head_category, C(2));
}

TEST(BestPairCa, PicksNonzeroCategory) {
  Thesaurus th;
  th.add_category(C(1), "Zero", {"u"});
  th.add_category(C(2), "Live", {"u", "x"});
  th.add_category(C(3), "Head", {"v"});
  AssociationModel m({{{C(2), C(3)}, 2.0}});
  auto e = best_pair_ca(m, th, "u", "v");
  EXPECT_DOUBLE_EQ(e.value, 0.5);
  EXPECT_EQ(e.modifier_category, C(2));
}

TEST(BestPairCa, TiesGoToSmallestCategories) {
  Thesaurus th;
  th.add_category(C(4), "P", {"u"});
  th.add_category(C(2), "Q", {"u"});
  th.add_category(C(9), "R", {"v"});
  th.add_category(C(7), "S", {"v"});
  auto e = best_pair_ca(AssociationModel(), th, "u", "v");
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.modifier_category, C(2));
  EXPECT_EQ(e.head_category, C(7));
}

TEST(BestPairCa, UnlistedWordThrows) {
  Thesaurus th;
  th.add_category(C(1), "A", {"u"});
  EXPECT_THROW(best_pair_ca(AssociationModel(), th, "u", "zz"),
               WordNotInThesaurus);
  EXPECT_THROW(best_pair_ca(AssociationModel(), th, "zz", "u"),
               WordNotInThesaurus);
}

TEST(BestPairCa, MatchesExhaustiveOracle) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = gen::random_listed_instance(rng, {.max_categories = 8});
    auto m = build_freq(count_pairs(inst.pairs), inst.thesaurus);
    auto f = oracle::freq_table(inst.thesaurus, inst.pairs);
    for (const auto& u : inst.words)
      for (const auto& v : inst.words) {
        if (!inst.thesaurus.contains(u) || !inst.thesaurus.contains(v)) continue;
        auto got = best_pair_ca(m, inst.thesaurus, u, v);
        auto want = oracle::best_pair(f, inst.thesaurus, u, v);
        ASSERT_NEAR(got.value, want.value, 1e-12);
        ASSERT_NEAR(m.conceptual_association(got.modifier_category,
                                             got.head_category),
                    want.value, 1e-12);
      }
  }
}

TEST(AnalyseTriple, LeftFixture) {
  auto f = left_favoring();
  auto fo = oracle::freq_table(f.th, f.pairs);
  ASSERT_NEAR(oracle::ca(fo, f.th, C(1), C(2)), 0.5, 1e-12);
  ASSERT_NEAR(oracle::ca(fo, f.th, C(1), C(3)), 0.2, 1e-12);

  auto a = analyse_triple(f.model(), f.th, "wone", "wtwo", "wthree");
  EXPECT_EQ(a.bracketing, Bracketing::Left);
  EXPECT_EQ(a.tree.to_string(), "[[wone wtwo] wthree]");
  EXPECT_EQ(a.trace.chosen, 2u);
  EXPECT_FALSE(a.trace.tie);
  EXPECT_NEAR(a.trace.candidates[0].evidence.value, 0.5, 1e-12);
  EXPECT_NEAR(a.trace.candidates[1].evidence.value, 0.2, 1e-12);
  EXPECT_EQ(a.trace.candidates[0].evidence.modifier_category, C(1));
  EXPECT_EQ(a.trace.candidates[1].evidence.head_category, C(3));
}

TEST(AnalyseTriple, RightFixture) {
  auto f = right_favoring();
  auto fo = oracle::freq_table(f.th, f.pairs);
  ASSERT_NEAR(oracle::ca(fo, f.th, C(1), C(2)), 0.2, 1e-12);
  ASSERT_NEAR(oracle::ca(fo, f.th, C(1), C(3)), 0.5, 1e-12);

  auto a = analyse_triple(f.model(), f.th, "wone", "wtwo", "wthree");
  EXPECT_EQ(a.bracketing, Bracketing::Right);
  EXPECT_EQ(a.tree.to_string(), "[wone [wtwo wthree]]");
  EXPECT_EQ(a.trace.chosen, 3u);
}

TEST(AnalyseTriple, UntrainedModelTiesLeft) {
  auto f = left_favoring();
  auto a = analyse_triple(AssociationModel(), f.th, "wone", "wtwo", "wthree");
  EXPECT_EQ(a.bracketing, Bracketing::Left);
  EXPECT_TRUE(a.trace.tie);
}

TEST(AnalyseTriple, LeftBiasCanFlipDecision) {
  auto f = right_favoring();
  auto m = f.model();
  // 0.2 * 2.5 == 0.5: a tie, which goes left.
  EXPECT_EQ(analyse_triple(m, f.th, "wone", "wtwo", "wthree", 2.5).bracketing,
            Bracketing::Left);
  EXPECT_EQ(analyse_triple(m, f.th, "wone", "wtwo", "wthree", 2.4).bracketing,
            Bracketing::Right);
}

TEST(AnalyseTriple, UnlistedWordThrows) {
  auto f = left_favoring();
  EXPECT_THROW(analyse_triple(f.model(), f.th, "wone", "nope", "wthree"),
               WordNotInThesaurus);
}

TEST(EnumerateBracketings, CatalanCounts) {
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (std::size_t n = 1; n <= 8; ++n) {
    Words nouns;
    for (std::size_t i = 0; i < n; ++i) nouns.push_back(gen::word_name(i));
    auto trees = enumerate_bracketings(nouns);
    EXPECT_EQ(trees.size(), catalan[n - 1]) << n;
    EXPECT_EQ(all_strings(trees).size(), trees.size()) << n;
    for (const auto& t : trees) EXPECT_EQ(t.leaves(), nouns);
  }
}

TEST(EnumerateBracketings, OrderIsSplitPointAscending) {
  Words abc = {"a", "b", "c"};
  auto trees = enumerate_bracketings(abc);
  ASSERT_EQ(trees.size(), 2u);
  EXPECT_EQ(trees[0].to_string(), "[a [b c]]");
  EXPECT_EQ(trees[1].to_string(), "[[a b] c]");
}

TEST(EnumerateBracketings, CapIsEnforced) {
  Words nine(9, "a");
  EXPECT_THROW(enumerate_bracketings(nine), SequenceTooLong);
  EXPECT_NO_THROW(enumerate_bracketings(nine, 9));
}

TEST(ScoreBracketing, HeadPairProducts) {
  auto f = left_favoring();
  f.pairs.push_back({"wtwo", "wthree"});
  auto m = f.model();
  auto bp = [&](const char* u, const char* v) {
    return best_pair_ca(m, f.th, u, v).value;
  };
  auto w1 = BracketTree::leaf("wone"), w2 = BracketTree::leaf("wtwo"),
       w3 = BracketTree::leaf("wthree");
  EXPECT_DOUBLE_EQ(score_bracketing(m, f.th, BracketTree::node(w1, w2)),
                   bp("wone", "wtwo"));
  EXPECT_DOUBLE_EQ(
      score_bracketing(m, f.th, BracketTree::node(BracketTree::node(w1, w2), w3)),
      bp("wone", "wtwo") * bp("wtwo", "wthree"));
  EXPECT_DOUBLE_EQ(
      score_bracketing(m, f.th, BracketTree::node(w1, BracketTree::node(w2, w3))),
      bp("wtwo", "wthree") * bp("wone", "wthree"));
  // No pair (wthree, wone) was trained.
  EXPECT_EQ(score_bracketing(m, f.th, BracketTree::node(w3, w1)), 0.0);
}

TEST(AnalyseCompound, PairIsTheOnlyTree) {
  auto f = left_favoring();
  Words nouns = {"wone", "wtwo"};
  auto a = analyse_compound(f.model(), f.th, nouns);
  EXPECT_EQ(a.best.to_string(), "[wone wtwo]");
  EXPECT_DOUBLE_EQ(a.score, 0.5);
  EXPECT_EQ(a.ranked.size(), 1u);
}

// Four single-category words with hand-set FREQ cells. Exact scores of the
// five trees (rational arithmetic):
//   [a [b [c d]]] 1/1728   [a [[b c] d]] 1/1728   [[a b] [c d]] 1/288
//   [[a [b c]] d] 1/576    [[[a b] c] d] 1/288
// The two 1/288 trees tie; the deeper left spine wins.
TEST(AnalyseCompound, FourNounFixture) {
  Thesaurus th;
  th.add_category(C(1), "A", {"a"});
  th.add_category(C(2), "B", {"b"});
  th.add_category(C(3), "C", {"c"});
  th.add_category(C(4), "D", {"d"});
  AssociationModel m({{{C(1), C(2)}, 4.0},
                      {{C(2), C(3)}, 1.0},
                      {{C(3), C(4)}, 2.0},
                      {{C(1), C(4)}, 1.0},
                      {{C(2), C(4)}, 3.0},
                      {{C(1), C(3)}, 1.0}});
  Words nouns = {"a", "b", "c", "d"};
  auto a = analyse_compound(m, th, nouns);
  EXPECT_EQ(a.best.to_string(), "[[[a b] c] d]");
  EXPECT_NEAR(a.score, 1.0 / 288, 1e-15);
  ASSERT_EQ(a.ranked.size(), 5u);
  EXPECT_EQ(a.ranked[1].tree.to_string(), "[[a b] [c d]]");
  EXPECT_NEAR(a.ranked[2].score, 1.0 / 576, 1e-15);
  EXPECT_NEAR(a.ranked[4].score, 1.0 / 1728, 1e-15);
}

TEST(AnalyseCompound, Errors) {
  auto f = left_favoring();
  auto m = f.model();
  Words bad = {"wone", "nope", "wtwo"};
  EXPECT_THROW(analyse_compound(m, f.th, bad), WordNotInThesaurus);
  Words long_seq(9, "wone");
  EXPECT_THROW(analyse_compound(m, f.th, long_seq), SequenceTooLong);
}

// With best_pair_ca(w2, w3) > 0 the common factor cancels and the product
// rule reduces to the pairwise triple procedure.
TEST(AnalyseCompound, AgreesWithTripleOnRandomModels) {
  std::mt19937 rng(1993);
  int checked = 0;
  while (checked < 300) {
    auto inst = gen::random_listed_instance(
        rng, {.max_categories = 6, .max_words = 6, .max_pairs = 30});
    auto m = build_freq(count_pairs(inst.pairs), inst.thesaurus);
    std::uniform_int_distribution<std::size_t> pick(0, inst.words.size() - 1);
    Words nouns = {inst.words[pick(rng)], inst.words[pick(rng)],
                   inst.words[pick(rng)]};
    if (best_pair_ca(m, inst.thesaurus, nouns[1], nouns[2]).value <= 0) continue;
    for (double bias : {1.0, 1.7}) {
      auto t = analyse_triple(m, inst.thesaurus, nouns[0], nouns[1], nouns[2], bias);
      auto c = analyse_compound(m, inst.thesaurus, nouns, {bias, 8});
      ASSERT_EQ(c.best, t.tree);
    }
    ++checked;
  }
}

TEST(AnalyseCompound, LeafOrderAndDeterminism) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = gen::random_listed_instance(rng, {.max_categories = 5});
    auto m = build_freq(count_pairs(inst.pairs), inst.thesaurus);
    Words nouns;
    const auto n = 2 + trial % 5;
    for (int i = 0; i < n; ++i) nouns.push_back(inst.words[rng() % inst.words.size()]);
    auto a = analyse_compound(m, inst.thesaurus, nouns);
    auto b = analyse_compound(m, inst.thesaurus, nouns);
    EXPECT_EQ(a.best.leaves(), nouns);
    EXPECT_EQ(a.best, b.best);
    for (const auto& alt : a.ranked) EXPECT_EQ(alt.tree.leaves(), nouns);
  }
}

TEST(Explain, OneLinePerInternalNode) {
  auto f = left_favoring();
  auto m = f.model();
  auto tree = analyse_triple(m, f.th, "wone", "wtwo", "wthree").tree;
  auto nodes = explain(m, f.th, tree);
  ASSERT_EQ(nodes.size(), 2u);
  EXPECT_EQ(nodes[0].left_head, "wone");
  EXPECT_EQ(nodes[0].right_head, "wtwo");
  EXPECT_NEAR(nodes[0].evidence.value, 0.5, 1e-12);
  EXPECT_EQ(nodes[1].left_head, "wtwo");
  EXPECT_EQ(nodes[1].right_head, "wthree");
}
