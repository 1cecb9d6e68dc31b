// Small hand-built systems used by the CLI samples, tests and acceptance
// suite.

#pragma once

#include "senescent/senescent.hpp"

namespace senescent::catalog {

struct Instance {
  SenescentSystem system;
  Configuration initial;
  ControlId target = 0;
};

/// The two depicted transitions: tree a(b,c(d)) with ages a:2 b:1 c:1 d:0,
/// rewriting c(d) to a(b,c0).  `change_control` picks q -> q' or q -> q.
struct FigureOne {
  SenescentSystem system;
  AgedConfiguration before;
  Position position;
  Tree rhs;
};
FigureOne figure_one(bool change_control, unsigned lifespan);

/// Five-rule system r1..r5 over q1..q5 from ⟨q1, t0⟩; target q5.
Instance interface_example(unsigned lifespan);

/// The thread-spawning program with integers 0..n wrapping modulo n; target
/// is the error control.
Instance spawner(unsigned n, unsigned lifespan);

}  // namespace senescent::catalog
