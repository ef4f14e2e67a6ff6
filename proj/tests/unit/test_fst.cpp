#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "patmine/error.hpp"
#include "patmine/fst.hpp"
#include "patmine/match.hpp"

using namespace patmine;
using namespace patmine::testing;

namespace {

const char* const kFig2bText =
    "initial\t0\n"
    "final\t3\n"
    "0\td\teps\t1\n"
    "0\tc\teps\t1\n"
    "1\tA\t$-A\t2\n"
    "1\tB\tB\t2\n"
    "2\tA\t$-A\t2\n"
    "2\tB\tB\t2\n"
    "2\te\teps\t3\n";

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(PATMINE_TEST_DATA) + "/golden/" + name, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Compares against a golden file; PATMINE_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const std::string& actual) {
  if (std::getenv("PATMINE_UPDATE_GOLDEN")) {
    std::ofstream(std::string(PATMINE_TEST_DATA) + "/golden/" + name, std::ios::binary) << actual;
  }
  EXPECT_EQ(actual, read_golden(name)) << name;
}

std::string single_row(std::string_view pattern, const Dictionary& dict) {
  auto fst = compile_pattern(pattern, dict);
  auto ts = fst.all_transitions();
  EXPECT_EQ(ts.size(), 1u) << pattern;
  if (ts.empty()) return {};
  return format_input(ts[0].in, dict) + " : " + format_output(ts[0].out, dict);
}

// Calls fn on every sequence over items 1..vocab of length <= max_length.
template <typename Fn>
void for_each_input(std::size_t vocab, std::size_t max_length, Fn&& fn) {
  Sequence s;
  std::function<void()> rec = [&] {
    fn(s);
    if (s.size() == max_length) return;
    for (ItemId w = 1; w <= vocab; ++w) {
      s.push_back(w);
      rec();
      s.pop_back();
    }
  };
  rec();
}

Dataset small_dataset() { return load_dataset("a b c x y\n", "a\tx\nb\tx\nx\ty\n"); }

}  // namespace

TEST(Fst, RunningExampleGolden) {
  auto ds = example_dataset();
  auto fst = compile_pattern(kExamplePattern, ds.dict);
  EXPECT_EQ(fst.num_states(), 4u);
  EXPECT_FALSE(fst.has_epsilons());
  EXPECT_EQ(to_text(fst, ds.dict), kFig2bText);
}

TEST(Fst, EpsilonMachineReducesToCompressedForm) {
  auto ds = example_dataset();
  auto raw = compile(parse_pattern(kExamplePattern), ds.dict);
  EXPECT_TRUE(raw.has_epsilons());
  auto eps_free = eliminate_epsilon(raw);
  EXPECT_FALSE(eps_free.has_epsilons());
  EXPECT_EQ(to_text(normalize(eps_free), ds.dict), kFig2bText);
}

TEST(Fst, TranslationTable) {
  auto ds = example_dataset();
  const auto& d = ds.dict;
  EXPECT_EQ(single_row("A=", d), "A= : eps");
  EXPECT_EQ(single_row("(A=)", d), "A= : A");
  EXPECT_EQ(single_row("A", d), "A : eps");
  EXPECT_EQ(single_row("(A)", d), "A : $");
  EXPECT_EQ(single_row("(A^)", d), "A : $-A");
  EXPECT_EQ(single_row("(A=^)", d), "A : A");
  EXPECT_EQ(single_row(".", d), ". : eps");
  EXPECT_EQ(single_row("(.)", d), ". : $");
  EXPECT_EQ(single_row("(.^)", d), ". : $-T");
}

TEST(Fst, CapturedExactItemMachine) {
  auto ds = example_dataset();
  auto fst = compile_pattern("(A=)", ds.dict);
  ASSERT_EQ(fst.num_states(), 2u);
  auto ts = fst.all_transitions();
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].in, InputLabel::exact(ds.dict.id("A")));
  EXPECT_EQ(ts[0].out, OutputLabel::constant(ds.dict.id("A")));
  EXPECT_TRUE(fst.is_final(ts[0].to));
  EXPECT_FALSE(fst.is_final(fst.initial()));
}

TEST(Fst, UnknownItemMatchesNothing) {
  auto ds = example_dataset();
  auto ast = parse_pattern("(zz)|[.(c)]");
  EXPECT_EQ(unknown_items(ast, ds.dict), std::vector<std::string>{"zz"});
  auto fst = compile_pattern("(zz)|[.(c)]", ds.dict);
  EXPECT_EQ(to_text(fst, ds.dict), "initial\t0\nfinal\t2\n0\t.\teps\t1\n1\tc\t$\t2\n");
  auto empty = compile_pattern("(zz)", ds.dict);
  EXPECT_EQ(empty.num_transitions(), 0u);
  EXPECT_TRUE(generate(empty, seq(ds.dict, "c"), ds.dict).empty());
}

TEST(Fst, ExpandGeneralization) {
  auto ds = example_dataset();
  const auto& d = ds.dict;
  auto fst = compile_pattern("(A^)", d);
  auto u = expand(fst, d);
  std::set<std::pair<std::string, std::string>> pairs;
  for (auto& t : u.transitions) pairs.emplace(d.gid(t.in), d.gid(t.out));
  EXPECT_EQ(pairs, (std::set<std::pair<std::string, std::string>>{
                       {"a1", "a1"}, {"a1", "A"}, {"a2", "a2"}, {"a2", "A"}, {"A", "A"}}));
  EXPECT_EQ(u.transitions.size(), 5u);
}

TEST(Fst, ExpandExact) {
  auto ds = example_dataset();
  auto u = expand(compile_pattern("(A=)", ds.dict), ds.dict);
  ASSERT_EQ(u.transitions.size(), 1u);
  EXPECT_EQ(u.transitions[0].in, ds.dict.id("A"));
  EXPECT_EQ(u.transitions[0].out, ds.dict.id("A"));
}

TEST(Fst, ExpandWildcardGeneralization) {
  auto ds = example_dataset();
  auto u = expand(compile_pattern("(.^)", ds.dict), ds.dict);
  // 11 identity pairs plus 8 proper (item, ancestor) pairs.
  EXPECT_EQ(u.transitions.size(), 19u);
  std::size_t identity = 0;
  for (auto& t : u.transitions) identity += t.in == t.out;
  EXPECT_EQ(identity, 11u);
}

TEST(Fst, ExpandRunningExample) {
  auto ds = example_dataset();
  auto u = expand(compile_pattern(kExamplePattern, ds.dict), ds.dict);
  // q0->q1: c, d. q1->q2 and q2->q2: 5 for A^ and 5 for B=^ each. q2->q3: e.
  EXPECT_EQ(u.transitions.size(), 2u + 10u + 10u + 1u);
}

TEST(Fst, EliminateEpsilonKeepsEpsilonFreeMachine) {
  auto ds = example_dataset();
  auto fst = compile_pattern(kExamplePattern, ds.dict);
  auto again = eliminate_epsilon(fst);
  EXPECT_EQ(again.all_transitions(), fst.all_transitions());
  ASSERT_EQ(again.num_states(), fst.num_states());
  for (StateId s = 0; s < fst.num_states(); ++s) EXPECT_EQ(again.is_final(s), fst.is_final(s));
}

TEST(Fst, EpsilonPathToFinalMakesInitialFinal) {
  CFst fst;
  auto q0 = fst.add_state(), q1 = fst.add_state(), q2 = fst.add_state();
  fst.set_initial(q0);
  fst.add_epsilon(q0, q1);
  fst.add_epsilon(q1, q2);
  fst.set_final(q2);
  auto out = eliminate_epsilon(fst);
  EXPECT_TRUE(out.is_final(out.initial()));
}

TEST(Fst, NormalizeDropsUnreachableState) {
  CFst fst;
  auto q0 = fst.add_state(), q1 = fst.add_state(), q2 = fst.add_state();
  fst.set_initial(q0);
  fst.add_transition(q0, InputLabel::dot(), OutputLabel::self(), q1);
  fst.set_final(q1);
  fst.set_final(q2);
  fst.add_transition(q2, InputLabel::dot(), OutputLabel::self(), q1);
  auto out = normalize(fst);
  EXPECT_EQ(out.num_states(), 2u);
  EXPECT_EQ(out.num_transitions(), 1u);
}

TEST(Fst, NormalizeDropsDeadState) {
  CFst fst;
  auto q0 = fst.add_state(), q1 = fst.add_state(), dead = fst.add_state();
  fst.set_initial(q0);
  fst.add_transition(q0, InputLabel::dot(), OutputLabel::self(), q1);
  fst.add_transition(q0, InputLabel::dot(), OutputLabel::eps(), dead);
  fst.set_final(q1);
  EXPECT_EQ(normalize(fst).num_states(), 2u);
}

TEST(Fst, NormalizeMergesParallelTransitions) {
  CFst fst;
  auto q0 = fst.add_state(), q1 = fst.add_state();
  fst.set_initial(q0);
  fst.add_transition(q0, InputLabel::dot(), OutputLabel::self(), q1);
  fst.add_transition(q0, InputLabel::dot(), OutputLabel::self(), q1);
  fst.set_final(q1);
  EXPECT_EQ(normalize(fst).num_transitions(), 1u);
}

TEST(Fst, NormalizeMergesEquivalentStates) {
  CFst fst;
  auto q0 = fst.add_state(), q1 = fst.add_state(), q2 = fst.add_state(), q3 = fst.add_state();
  fst.set_initial(q0);
  fst.add_transition(q0, InputLabel::exact(1), OutputLabel::eps(), q1);
  fst.add_transition(q0, InputLabel::exact(2), OutputLabel::eps(), q2);
  fst.add_transition(q1, InputLabel::dot(), OutputLabel::self(), q3);
  fst.add_transition(q2, InputLabel::dot(), OutputLabel::self(), q3);
  fst.set_final(q3);
  auto out = normalize(fst);
  EXPECT_EQ(out.num_states(), 3u);
  EXPECT_EQ(out.num_transitions(), 3u);
}

TEST(Fst, NormalizedStatesAreBfsNumbered) {
  auto ds = example_dataset();
  auto fst = compile_pattern("[.*(.)]{2,4}", ds.dict);
  StateId next = 1;
  std::vector<char> seen(fst.num_states(), 0);
  seen[fst.initial()] = 1;
  EXPECT_EQ(fst.initial(), 0u);
  std::vector<StateId> queue{fst.initial()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto& t : fst.transitions(queue[i])) {
      if (seen[t.to]) continue;
      seen[t.to] = 1;
      EXPECT_EQ(t.to, next++);
      queue.push_back(t.to);
    }
  }
  EXPECT_EQ(queue.size(), fst.num_states());
}

TEST(Fst, RandomMachinesPreserveGeneratedSets) {
  auto ds = small_dataset();
  Generator gen(424242);
  for (int round = 0; round < 150; ++round) {
    auto raw = gen.cfst(ds.dict, 5, true);
    auto oracle_fst = expand(raw, ds.dict);
    auto eps_free = eliminate_epsilon(raw);
    auto norm = normalize(eps_free);
    ASSERT_FALSE(norm.has_epsilons());
    for (int k = 0; k < 40; ++k) {
      auto input = gen.sequence(ds.dict, 6);
      auto expected = oracle_generate(oracle_fst, input);
      EXPECT_EQ(generate(eps_free, input, ds.dict), expected) << "round " << round;
      EXPECT_EQ(generate(norm, input, ds.dict), expected) << "round " << round;
    }
  }
}

TEST(Fst, NormalizePreservesEnumeratedInputs) {
  auto ds = small_dataset();
  Generator gen(99);
  for (int round = 0; round < 6; ++round) {
    auto raw = gen.cfst(ds.dict, 4, true);
    auto oracle_fst = expand(raw, ds.dict);
    auto norm = normalize(eliminate_epsilon(raw));
    for_each_input(ds.dict.size(), 5, [&](const Sequence& input) {
      ASSERT_EQ(generate(norm, input, ds.dict), oracle_generate(oracle_fst, input));
    });
  }
}

TEST(Fst, OutputRestrictionHoldsOnRandomMachines) {
  auto ds = example_dataset();
  Generator gen(5);
  for (int round = 0; round < 200; ++round) {
    auto raw = gen.cfst(ds.dict, 6, true);
    EXPECT_NO_THROW(check_output_restriction(raw, ds.dict));
    EXPECT_NO_THROW(check_output_restriction(normalize(eliminate_epsilon(raw)), ds.dict));
    for (auto& t : expand(raw, ds.dict).transitions) {
      if (t.in == kNoItem || t.out == kNoItem) continue;
      EXPECT_TRUE(ds.dict.generalizes_to(t.in, t.out));
    }
  }
}

TEST(Fst, OutputRestrictionHoldsOnCompiledPatterns) {
  auto ds = example_dataset();
  Generator gen(6);
  std::vector<std::string> items;
  for (ItemId id = 1; id <= ds.dict.size(); ++id) items.push_back(ds.dict.gid(id));
  for (int round = 0; round < 300; ++round) {
    auto pattern = gen.pattern(items);
    EXPECT_NO_THROW(check_output_restriction(compile_pattern(pattern, ds.dict), ds.dict)) << pattern;
  }
}

TEST(Fst, OutputRestrictionViolationDetected) {
  auto ds = example_dataset();
  CFst fst;
  auto q0 = fst.add_state(), q1 = fst.add_state();
  fst.add_transition(q0, InputLabel::descendants(ds.dict.id("A")), OutputLabel::constant(ds.dict.id("B")), q1);
  fst.set_final(q1);
  EXPECT_THROW(check_output_restriction(fst, ds.dict), InvariantViolation);
}

TEST(Fst, DotRunningExample) {
  auto ds = example_dataset();
  expect_golden("running_example.dot", to_dot(compile_pattern(kExamplePattern, ds.dict), ds.dict));
}

TEST(Fst, DotSingleTransition) {
  auto ds = example_dataset();
  expect_golden("single_transition.dot", to_dot(compile_pattern("(A=)", ds.dict), ds.dict));
}

TEST(Fst, DotRandomMachine) {
  auto ds = example_dataset();
  Generator gen(31337);
  CFst machine;
  do {
    machine = normalize(eliminate_epsilon(gen.cfst(ds.dict, 5, true)));
  } while (machine.num_transitions() < 4);
  expect_golden("random_machine.dot", to_dot(machine, ds.dict));
}
