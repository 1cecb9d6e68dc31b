#include "doctest.h"
#include "helpers.hpp"
#include "senescent/automata.hpp"
#include "senescent/formats.hpp"
#include "support/support.hpp"

using namespace senescent;
using senescent::testing::kind_of;

TEST_CASE("singleton automata accept exactly their tree") {
  const Tree t = parse_tree("g(f(a),b)");
  const NTA s = singleton_nta(t);
  REQUIRE(s.singleton().has_value());
  CHECK(nta_accepts(s, t));
  CHECK_FALSE(nta_accepts(s, parse_tree("g(f(b),b)")));
  CHECK(nta_enumerate(s, 10) == std::vector<Tree>{t});
  CHECK_FALSE(nta_empty(s));
}

TEST_CASE("run sets and enumeration of a parity automaton") {
  // Trees over f:1, a:0 with an even number of f nodes.
  NTA a;
  const StateId even = a.state("even"), odd = a.state("odd");
  a.add_rule({}, Label::intern("a"), even);
  a.add_rule({even}, Label::intern("f"), odd);
  a.add_rule({odd}, Label::intern("f"), even);
  a.add_final(even);
  CHECK(nta_accepts(a, parse_tree("f(f(a))")));
  CHECK_FALSE(nta_accepts(a, parse_tree("f(a)")));
  const auto sets = nta_run_sets(a, parse_tree("f(a)"));
  CHECK(sets[0][odd]);
  CHECK_FALSE(sets[0][even]);
  const auto trees = nta_enumerate(a, 5);
  REQUIRE(trees.size() == 3);
  CHECK(trees[0].to_string() == "a");
  CHECK(kind_of([&] { (void)nta_accepts(a, parse_tree("b")); }) == ErrorKind::AlphabetMismatch);
}

TEST_CASE("emptiness") {
  NTA a;
  const StateId s = a.state("s");
  a.add_rule({s}, Label::intern("f"), s);
  a.add_final(s);
  CHECK(nta_empty(a));
  a.add_rule({}, Label::intern("a"), s);
  CHECK_FALSE(nta_empty(a));
}

TEST_CASE("Parikh images of words and automata") {
  const std::vector<std::string> order{"x", "y"};
  const std::vector<std::string> w{"x", "y", "x"};
  CHECK(parikh_of_word(w, order) == ParikhVector{2, 1});
  CHECK(kind_of([&] { parikh_of_word(std::vector<std::string>{"z"}, order); }) == ErrorKind::UnknownSymbol);

  // (xy)*: images {(k,k)}.
  RegularAutomaton r;
  const StateId p = r.state("p"), q = r.state("q");
  r.set_initial(p);
  r.add_final(p);
  r.add_transition(p, "x", q);
  r.add_transition(q, "y", p);
  const auto images = parikh_of_automaton(r, order, 4);
  CHECK(images == std::set<ParikhVector>{{0, 0}, {1, 1}, {2, 2}});
  CHECK(r.symbols() == order);

  const std::set<ParikhVector> vs{{0, 0}, {2, 1}};
  CHECK(parikh_of_automaton(automaton_from_vectors(vs, order), order, 5) == vs);
  CHECK(parikh_of_automaton(automaton_from_vectors({}, order), order, 5).empty());
}

TEST_CASE("automaton text format round-trips") {
  senescent::testing::Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const NTA a = senescent::testing::random_nta(rng, senescent::testing::small_alphabet(), 3);
    const NTA b = parse_nta(print_nta(a));
    for (const Tree& t : senescent::testing::all_trees(senescent::testing::small_alphabet(), 4)) {
      // The parsed automaton only knows the labels its rules use.
      const bool in_b = conforms(t, b.alphabet()) && nta_accepts(b, t);
      CHECK(nta_accepts(a, t) == in_b);
    }
    const RegularAutomaton r = senescent::testing::random_ra(rng, {"x", "y"}, 3);
    const std::vector<std::string> order{"x", "y"};
    CHECK(parikh_of_automaton(parse_ra(print_ra(r)), order, 5) == parikh_of_automaton(r, order, 5));
  }
}
