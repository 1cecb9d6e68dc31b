#include "senescent/catalog.hpp"

#include <string>

namespace senescent::catalog {

namespace {

Tree leaf(const std::string& name) { return Tree::leaf(name); }

std::string id(int v) { return v < 0 ? "n" + std::to_string(-v) : std::to_string(v); }

}  // namespace

FigureOne figure_one(bool change_control, unsigned lifespan) {
  RankedAlphabet sigma;
  sigma.add("a", 2);
  sigma.add("b", 0);
  sigma.add("c", 1);
  sigma.add("d", 0);
  // The picture uses c both as a unary node and as a leaf; the leaf is c0 here.
  sigma.add("c0", 0);
  Sgtrs base({"q", "qp"}, sigma);
  const Tree lhs = Tree::make("c", {leaf("d")});
  const Tree rhs = Tree::make("a", {leaf("b"), leaf("c0")});
  base.add_single("q", lhs, change_control ? "qp" : "q", rhs);

  FigureOne out{SenescentSystem{std::move(base), lifespan}, {}, {2}, rhs};
  out.before.control = out.system.base.control("q");
  out.before.tree = Tree::make("a", {leaf("b"), lhs});
  // Pre-order a, b, c, d.
  out.before.ages = {2, 1, 1, 0};
  return out;
}

Instance interface_example(unsigned lifespan) {
  RankedAlphabet sigma;
  for (const char* l : {"t0", "t1", "t1_1", "t1_2", "t2", "t2_1", "t2_2"}) sigma.add(l, 0);
  sigma.add("u", 2);
  Sgtrs base({"q1", "q2", "q3", "q4", "q5"}, sigma);
  base.add_single("q1", leaf("t0"), "q2", Tree::make("u", {leaf("t1"), leaf("t2")}));
  base.add_single("q2", leaf("t1"), "q2", leaf("t1_1"));
  base.add_single("q2", leaf("t2"), "q3", leaf("t2_1"));
  base.add_single("q3", leaf("t2_1"), "q4", leaf("t2_2"));
  base.add_single("q4", leaf("t1_1"), "q5", leaf("t1_2"));
  Instance out{SenescentSystem{std::move(base), lifespan}, {}, 0};
  out.initial = Configuration{out.system.base.control("q1"), leaf("t0")};
  out.target = out.system.base.control("q5");
  return out;
}

Instance spawner(unsigned n, unsigned lifespan) {
  const int num = static_cast<int>(n);
  auto th = [](int i1, int j1) { return "th_" + id(i1) + "_" + id(j1); };
  auto sc = [](int i1, int j1, int i2, int j2) {
    return "sc_" + id(i1) + "_" + id(j1) + "_" + id(i2) + "_" + id(j2);
  };
  auto scn = [](int i1, int j1, int i2, int j2) {
    return "scn_" + id(i1) + "_" + id(j1) + "_" + id(i2) + "_" + id(j2);
  };
  auto ctl = [](int i) { return "c" + std::to_string(i); };
  auto spawnctl = [](int i, int i1, int j1) { return "spawn_" + id(i) + "_" + id(i1) + "_" + id(j1); };
  auto hasid = [](int i) { return "hasid_" + std::to_string(i); };

  RankedAlphabet sigma;
  std::vector<std::string> leaves;
  for (int i1 = -1; i1 <= num; ++i1)
    for (int j1 = -1; j1 <= num; ++j1) leaves.push_back(th(i1, j1));
  for (int i1 = 0; i1 <= num; ++i1)
    for (int j1 = -1; j1 <= num; ++j1)
      for (int i2 = 0; i2 <= num; ++i2)
        for (int j2 = -1; j2 <= num; ++j2) {
          leaves.push_back(sc(i1, j1, i2, j2));
          leaves.push_back(scn(i1, j1, i2, j2));
        }
  leaves.push_back("spawn");
  leaves.push_back("dead");
  for (const auto& l : leaves) sigma.add(l, 0);
  sigma.add("split", 2);

  std::vector<std::string> controls;
  for (int i = 0; i <= num; ++i) controls.push_back(ctl(i));
  for (int i = 0; i <= num; ++i)
    for (int i1 = 0; i1 <= num; ++i1)
      for (int j1 = -1; j1 <= num; ++j1) controls.push_back(spawnctl(i, i1, j1));
  for (int i = 0; i <= num; ++i) controls.push_back(hasid(i));
  controls.push_back("err");
  Sgtrs base(controls, sigma);

  // Refreshing leaves keeps them from fossilising.
  for (const auto& q : controls)
    for (const auto& l : leaves) base.add_single(q, leaf(l), q, leaf(l));

  for (int i = 0; i <= num; ++i) {
    const int next = (i + 1) % num;
    for (int i1 = -1; i1 <= num; ++i1)
      for (int j1 = -1; j1 <= num; ++j1) {
        if (i1 < 0) continue;
        base.add_single(ctl(i), leaf(th(i1, j1)), ctl(next), leaf(sc(i1, j1, i, -1)));
        base.add_single(ctl(i), leaf(th(i1, j1)), hasid(i1), leaf("dead"));
      }
    for (int i1 = 0; i1 <= num; ++i1)
      for (int j1 = -1; j1 <= num; ++j1)
        for (int i2 = 0; i2 <= num; ++i2) {
          base.add_single(ctl(i), leaf(sc(i1, j1, i2, -1)), ctl(next), leaf(sc(i1, j1, i2, i)));
          for (int j2 = -1; j2 <= num; ++j2) {
            if (j2 >= 0) {
              base.add_single(ctl(i), leaf(sc(i1, j1, i2, j2)), spawnctl(i, i2, j2), leaf(scn(i1, j1, i2, j2)));
            }
            if (i2 >= 0 && j2 >= 0) {
              base.add_single(ctl(i), leaf(scn(i1, j1, i2, j2)), spawnctl(i, j2, i2), leaf(th(i1, j1)));
            }
          }
        }
    for (int i1 = 0; i1 <= num; ++i1)
      for (int j1 = -1; j1 <= num; ++j1) {
        base.add_single(spawnctl(i, i1, j1), leaf("spawn"), ctl(i),
                        Tree::make("split", {leaf(th(i1, j1)), leaf("spawn")}));
      }
    for (int j1 = -1; j1 <= num; ++j1) base.add_single(hasid(i), leaf(th(i, j1)), "err", leaf(th(i, j1)));
  }

  Instance out{SenescentSystem{std::move(base), lifespan}, {}, 0};
  out.initial = Configuration{out.system.base.control(ctl(1 % (num + 1))),
                              Tree::make("split", {leaf(th(0, -1)), leaf("spawn")})};
  out.target = out.system.base.control("err");
  return out;
}

}  // namespace senescent::catalog
