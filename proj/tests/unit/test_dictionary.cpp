#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "patmine/dictionary.hpp"
#include "patmine/error.hpp"
#include "patmine/sequence_db.hpp"

using namespace patmine;
using namespace patmine::testing;

namespace {

Dictionary example_hierarchy() {
  std::vector<std::string> vocab{"c", "d", "e"};
  return Dictionary::from_hierarchy(kExampleHierarchy, vocab);
}

}  // namespace

TEST(Dictionary, LoadsExampleHierarchy) {
  auto dict = example_hierarchy();
  EXPECT_EQ(dict.size(), 11u);
  EXPECT_TRUE(dict.parents(dict.id("c")).empty());
  EXPECT_EQ(gids(dict, dict.parents(dict.id("b11"))), (std::set<std::string>{"b1"}));
  EXPECT_EQ(gids(dict, dict.children(dict.id("B"))), (std::set<std::string>{"b1", "b2"}));
}

TEST(Dictionary, FlatHierarchy) {
  std::vector<std::string> vocab{"x", "y"};
  auto dict = Dictionary::from_hierarchy("", vocab);
  EXPECT_EQ(dict.size(), 2u);
  EXPECT_EQ(gids(dict, dict.ancestors(dict.id("x"))), (std::set<std::string>{"x"}));
}

TEST(Dictionary, RejectsCycle) {
  try {
    Dictionary::from_hierarchy("u\tv\nv\tu\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    std::string msg = e.what();
    EXPECT_TRUE(msg.find("'u'") != std::string::npos || msg.find("'v'") != std::string::npos) << msg;
  }
}

TEST(Dictionary, RejectsMalformedLine) {
  EXPECT_THROW(Dictionary::from_hierarchy("a b\n"), DataError);
  EXPECT_THROW(Dictionary::from_hierarchy("a\t\n"), DataError);
}

TEST(Dictionary, IgnoresDuplicateEdgesAndComments) {
  auto dict = Dictionary::from_hierarchy("# header\na\tb\na\tb\n");
  EXPECT_EQ(dict.parents(dict.id("a")).size(), 1u);
}

TEST(Dictionary, Ancestors) {
  auto dict = example_hierarchy();
  EXPECT_EQ(gids(dict, dict.ancestors(dict.id("b1"))), (std::set<std::string>{"b1", "B"}));
  EXPECT_EQ(gids(dict, dict.ancestors(dict.id("c"))), (std::set<std::string>{"c"}));
  EXPECT_EQ(gids(dict, dict.ancestors(dict.id("b12"))), (std::set<std::string>{"b12", "b1", "B"}));
  // BFS order starts at the item itself.
  EXPECT_EQ(dict.ancestors(dict.id("b12")).front(), dict.id("b12"));
  EXPECT_THROW(dict.ancestors(99), std::exception);
}

TEST(Dictionary, Descendants) {
  auto dict = example_hierarchy();
  EXPECT_EQ(gids(dict, dict.descendants(dict.id("b1"))), (std::set<std::string>{"b1", "b11", "b12"}));
  EXPECT_EQ(gids(dict, dict.descendants(dict.id("e"))), (std::set<std::string>{"e"}));
  EXPECT_EQ(gids(dict, dict.descendants(dict.id("B"))),
            (std::set<std::string>{"B", "b1", "b2", "b11", "b12"}));
}

TEST(Dictionary, FlistGolden) {
  auto ds = example_dataset();
  std::vector<std::pair<std::string, std::uint64_t>> expected{
      {"A", 6}, {"B", 6}, {"a1", 6}, {"e", 6}, {"d", 3}, {"b2", 3},
      {"b1", 2}, {"c", 2}, {"b11", 1}, {"b12", 1}, {"a2", 1}};
  ASSERT_EQ(ds.dict.size(), expected.size());
  for (auto& [gid, f] : expected) EXPECT_EQ(ds.dict.frequency(ds.dict.id(gid)), f) << gid;
  // Ids follow descending frequency, ties by gid.
  std::vector<std::string> order;
  for (ItemId id = 1; id <= ds.dict.size(); ++id) order.push_back(ds.dict.gid(id));
  EXPECT_EQ(order, (std::vector<std::string>{"A", "B", "a1", "e", "b2", "d", "b1", "c", "a2", "b11", "b12"}));
}

TEST(Dictionary, FlistExport) {
  auto ds = example_dataset();
  auto text = ds.dict.export_flist();
  EXPECT_EQ(text.substr(0, 7), "A\t6\nB\t6");
}

TEST(Dictionary, FlistEmptyDatabase) {
  auto ds = load_dataset("", kExampleHierarchy);
  for (ItemId id = 1; id <= ds.dict.size(); ++id) EXPECT_EQ(ds.dict.frequency(id), 0u);
}

TEST(Dictionary, FlistSingleSequence) {
  auto ds = load_dataset("a1\n", kExampleHierarchy);
  for (ItemId id = 1; id <= ds.dict.size(); ++id) {
    const auto& g = ds.dict.gid(id);
    EXPECT_EQ(ds.dict.frequency(id), (g == "a1" || g == "A") ? 1u : 0u) << g;
  }
}

TEST(Dictionary, ClosuresAreMutualAndMatchEdgeWalk) {
  Generator gen(7);
  for (int round = 0; round < 50; ++round) {
    auto data = gen.dataset();
    auto ds = load_dataset(data.sequences, data.hierarchy);
    const auto& dict = ds.dict;
    for (ItemId u = 1; u <= dict.size(); ++u) {
      auto anc = walk_ancestors(dict, u);
      std::sort(anc.begin(), anc.end());
      std::vector<ItemId> closure(dict.ancestors(u).begin(), dict.ancestors(u).end());
      std::sort(closure.begin(), closure.end());
      EXPECT_EQ(anc, closure);
      for (ItemId v = 1; v <= dict.size(); ++v) {
        auto desc = dict.descendants(v);
        bool in_desc = std::find(desc.begin(), desc.end(), u) != desc.end();
        EXPECT_EQ(in_desc, dict.generalizes_to(u, v));
      }
    }
  }
}

TEST(Dictionary, FlistMatchesBruteForce) {
  Generator gen(11);
  for (int round = 0; round < 50; ++round) {
    auto data = gen.dataset();
    auto ds = load_dataset(data.sequences, data.hierarchy);
    for (ItemId w = 1; w <= ds.dict.size(); ++w) {
      EXPECT_EQ(ds.dict.frequency(w), brute_force_item_frequency(ds.db, ds.dict, w));
      for (ItemId p : ds.dict.parents(w)) EXPECT_GE(ds.dict.frequency(p), ds.dict.frequency(w));
      if (w > 1) EXPECT_GE(ds.dict.frequency(w - 1), ds.dict.frequency(w));
    }
  }
}

TEST(Dictionary, RecodingIsBijective) {
  auto raw = Dictionary::from_hierarchy(kExampleHierarchy);
  auto db = load_sequences(kExampleSequences, raw);
  auto frozen = compute_flist(raw, db);
  auto forward = raw.recoding_to(frozen);
  auto backward = frozen.recoding_to(raw);
  for (ItemId id = 1; id <= raw.size(); ++id) EXPECT_EQ(backward[forward[id]], id);
  auto recoded = recode(db, forward);
  for (std::size_t i = 0; i < db.size(); ++i) EXPECT_EQ(decode(recoded[i], frozen), decode(db[i], raw));
}

TEST(Dictionary, FrozenRejectsMutation) {
  auto ds = example_dataset();
  EXPECT_TRUE(ds.dict.frozen());
  EXPECT_THROW(ds.dict.add_edge("x", "y"), DataError);
}
