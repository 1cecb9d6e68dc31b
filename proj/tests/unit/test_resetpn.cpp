#include "doctest.h"
#include "helpers.hpp"
#include "senescent/formats.hpp"
#include "senescent/resetpn.hpp"
#include "support/support.hpp"

using namespace senescent;
using senescent::testing::kind_of;

namespace {

ResetNet one_counter(const char* rule) {
  return parse_net(std::string("counters c\ncontrols q\n") + rule + "\n");
}

}  // namespace

TEST_CASE("operations apply as decrement, reset, increment") {
  const ResetNet all = one_counter("rule q {decr c, reset c, incr c} q");
  CHECK(pn_step(all, {0, {5}}, 0).marking == Marking{1});
  CHECK(kind_of([&] { pn_step(all, {0, {0}}, 0); }) == ErrorKind::StuckOnDecrement);
  const ResetNet reset = one_counter("rule q {reset c} q");
  CHECK(pn_step(reset, {0, {2}}, 0).marking == Marking{0});

  ResetNet two = parse_net("counters c\ncontrols p q\nrule p {incr c} q\n");
  CHECK(kind_of([&] { pn_step(two, {1, {0}}, 0); }) == ErrorKind::WrongControl);
  CHECK_FALSE(pn_try_step(two, {1, {0}}, 0).has_value());
}

TEST_CASE("pred-basis examples") {
  const ResetNet inc = one_counter("rule q {incr c} q");
  CHECK(pred_basis(inc, inc.rules()[0], {0, {2}}) == NetConfig{0, {1}});
  const ResetNet reset = one_counter("rule q {reset c} q");
  CHECK_FALSE(pred_basis(reset, reset.rules()[0], {0, {1}}).has_value());
  CHECK(pred_basis(reset, reset.rules()[0], {0, {0}}) == NetConfig{0, {0}});
}

TEST_CASE("forward coverability") {
  const ResetNet inc = one_counter("rule q {incr c} q");
  const auto yes = pn_cover_forward(inc, {0, {0}}, {0, {3}}, 10);
  REQUIRE(yes.yes());
  CHECK(yes.witness.size() == 3);

  const ResetNet dec = one_counter("rule q {decr c} q");
  const auto stuck = pn_cover_forward(dec, {0, {0}}, {0, {1}}, 10);
  CHECK_FALSE(stuck.yes());
}

TEST_CASE("backward coverability returns a replayable witness and a minimal basis") {
  const ResetNet net = parse_net(R"(counters x y
controls p q
rule p {incr x} p
rule p {decr x, incr y} q
rule q {reset x} p
)");
  const NetConfig init{0, {0, 0}};
  const auto r = pn_cover_backward(net, init, {0, {1, 2}});
  REQUIRE(r.covered);
  const auto trace = pn_replay(net, init, r.witness);
  CHECK(covers(trace.back(), NetConfig{0, {1, 2}}));
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    for (std::size_t j = 0; j < r.basis.size(); ++j) {
      if (i != j) CHECK_FALSE(covers(r.basis[i], r.basis[j]));
    }
  }
  CHECK(pn_cover_backward(net, init, {1, {0, 0}}).covered);
}

TEST_CASE("backward coverability says no") {
  const ResetNet net = parse_net("counters c\ncontrols p q\nrule p {reset c} q\nrule q {decr c} p\n");
  CHECK_FALSE(pn_cover_backward(net, {0, {0}}, {0, {1}}).covered);
  CHECK(pn_cover_backward(net, {0, {0}}, {1, {0}}).covered);
}

TEST_CASE("exact reachability search") {
  ResetNet empty = parse_net("counters c\ncontrols q\n");
  CHECK(pn_reach_forward(empty, {0, {2}}, {0, {2}}, 5).yes());
  const ResetNet inc = one_counter("rule q {incr c} q");
  const auto r = pn_reach_forward(inc, {0, {1}}, {0, {5}}, 6);
  REQUIRE(r.yes());
  CHECK(pn_replay(inc, {0, {1}}, r.witness).back() == NetConfig{0, {5}});
  CHECK_FALSE(pn_reach_forward(inc, {0, {1}}, {0, {0}}, 6).yes());
}

TEST_CASE("net text format") {
  senescent::testing::Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const ResetNet net = senescent::testing::random_net(rng, 3, 2, 2);
    const ResetNet again = parse_net(print_net(net));
    CHECK(again.rules() == net.rules());
    CHECK(again.counters() == net.counters());
  }
  const ResetNet net = parse_net("counters a b\ncontrols p\n");
  CHECK(parse_net_config(net, "p b=3") == NetConfig{0, {0, 3}});
  CHECK(parse_marking(net, "a=1, b=2") == Marking{1, 2});
  CHECK(kind_of([&] { parse_marking(net, "z=1"); }).has_value());
}
