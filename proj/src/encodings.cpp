#include "senescent/encodings.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "senescent/errors.hpp"

namespace senescent {

std::string EncodingReport::sidecar() const {
  std::string out;
  for (const auto& [orig, encoded] : names) out += orig + "\t" + encoded + "\n";
  return out;
}

namespace {

/// Turns an arbitrary name into a unique tree label.
class LabelNamer {
 public:
  explicit LabelNamer(std::set<std::string> reserved) : used_(std::move(reserved)) {}

  std::string operator()(const std::string& prefix, const std::string& name) {
    std::string base = prefix;
    for (char ch : name) base += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') ? ch : '_';
    std::string out = base;
    for (int k = 1; used_.count(out); ++k) out = base + "_" + std::to_string(k);
    used_.insert(out);
    return out;
  }

 private:
  std::set<std::string> used_;
};

Tree leaf(const std::string& name) { return Tree::leaf(name); }

}  // namespace

// ---------------------------------------------------------------------------
// Scope-bounded pushdown systems

unsigned scoped_switch_cost(const Mpds& mpds) { return mpds.stacks() == 1 ? 4 : 2; }

ScopedEncoding encode_scoped(const Mpds& mpds) {
  if (!mpds.initial || !mpds.target) {
    throw Error(ErrorKind::InvalidSystem, "the pushdown system needs an initial and a target control");
  }
  const unsigned n = std::max(2u, mpds.stacks());
  const auto& Q = mpds.controls();

  ScopedEncoding out;
  out.stacks = n;
  auto& names = out.report.names;
  LabelNamer namer({"split", "bot"});

  std::vector<std::string> qlabel, glabel, stopped;
  for (const auto& q : Q) {
    qlabel.push_back(namer("Q_", q));
    names.emplace_back("control " + q, qlabel.back());
  }
  for (const auto& g : mpds.symbols()) {
    glabel.push_back(namer("G_", g));
    names.emplace_back("symbol " + g, glabel.back());
  }
  for (unsigned i = 1; i <= n; ++i) stopped.push_back(namer("s", std::to_string(i)));
  names.emplace_back("symbol bot", "bot");
  if (mpds.stacks() == 1) names.emplace_back("stack 2", "idle padding stack");

  RankedAlphabet sigma;
  sigma.add("split", n);
  sigma.add("bot", 1);
  for (const auto& l : qlabel) sigma.add(l, 0);
  for (const auto& l : glabel) sigma.add(l, 1);
  for (const auto& l : stopped) sigma.add(l, 0);

  auto ctl = [&](std::size_t q, unsigned i) { return Q[q] + "@" + std::to_string(i); };
  std::vector<std::string> controls;
  for (unsigned i = 1; i <= n; ++i)
    for (std::size_t q = 0; q < Q.size(); ++q) controls.push_back(ctl(q, i));
  std::string init = "init", dest = "dest";
  while (std::find(controls.begin(), controls.end(), init) != controls.end()) init += "_";
  while (std::find(controls.begin(), controls.end(), dest) != controls.end()) dest += "_";
  controls.push_back(init);
  controls.push_back(dest);
  names.emplace_back("initial control", init);
  names.emplace_back("target control", dest);

  Sgtrs base(controls, sigma);
  const std::size_t qi = *mpds.initial, qd = *mpds.target;
  base.add_single(init, leaf(stopped[n - 1]), ctl(qi, 1), leaf(stopped[n - 1]));
  base.add_single(ctl(qd, 1), leaf(qlabel[qd]), dest, leaf(qlabel[qd]));

  for (unsigned i = 1; i <= n; ++i) {
    for (std::size_t q = 0; q < Q.size(); ++q) {
      for (const auto& r : mpds.rules()) {
        if (r.stack != i) continue;
        switch (r.kind) {
          case MpdsRule::Kind::Push:
            base.add_single(ctl(q, i), leaf(qlabel[r.from]), ctl(q, i),
                            Tree::make(glabel[r.symbol], {leaf(qlabel[r.to])}));
            break;
          case MpdsRule::Kind::Int:
            base.add_single(ctl(q, i), leaf(qlabel[r.from]), ctl(q, i), leaf(qlabel[r.to]));
            break;
          case MpdsRule::Kind::Pop:
            base.add_single(ctl(q, i), Tree::make(glabel[r.symbol], {leaf(qlabel[r.from])}), ctl(q, i),
                            leaf(qlabel[r.to]));
            break;
        }
      }
    }
  }
  for (unsigned i = 1; i <= n; ++i) {
    const unsigned next = i % n + 1;
    for (std::size_t q = 0; q < Q.size(); ++q)
      for (std::size_t q2 = 0; q2 < Q.size(); ++q2)
        base.add_single(ctl(q, i), leaf(qlabel[q2]), ctl(q2, next), leaf(stopped[i - 1]));
    for (std::size_t q = 0; q < Q.size(); ++q)
      base.add_single(ctl(q, i), leaf(stopped[i - 1]), ctl(q, i), leaf(qlabel[q]));
  }

  std::vector<Tree> branches;
  for (unsigned i = 0; i < n; ++i) branches.push_back(Tree::make("bot", {leaf(stopped[i])}));
  out.report.lifespan = mpds.scope() * n;
  out.system = SenescentSystem{std::move(base), out.report.lifespan};
  out.initial = Configuration{out.system.base.control(init), Tree::make(Label::intern("split"), branches)};
  out.target = out.system.base.control(dest);
  return out;
}

// ---------------------------------------------------------------------------
// Reset nets

namespace {

struct Normalised {
  ResetNet net;
  NetConfig initial;
  std::uint32_t target = 0;
};

/// Splits rules into single-operation steps (decrements, resets, increments
/// in that order), starts from the zero marking, and optionally turns a
/// nonzero target marking into a decrement chain ending in a fresh control.
Normalised normalise(const ResetNet& net, const NetConfig& initial, const NetConfig& target,
                     bool zero_target, EncodingReport& report) {
  Normalised out;
  for (const auto& c : net.controls()) out.net.add_control(c);
  for (const auto& c : net.counters()) out.net.add_counter(c);
  std::set<std::string> taken(net.controls().begin(), net.controls().end());
  std::map<std::string, int> next_index;
  auto fresh = [&](const std::string& base) {
    std::string name;
    do {
      name = base + "#" + std::to_string(++next_index[base]);
    } while (taken.count(name));
    taken.insert(name);
    report.names.emplace_back("intermediate after " + base, name);
    return out.net.add_control(name);
  };
  using Op = std::pair<int, std::uint32_t>;  // 0 decr, 1 reset, 2 incr
  auto chain = [&](std::uint32_t from, const std::string& base, const std::vector<Op>& ops,
                   std::optional<std::uint32_t> to) {
    std::uint32_t cur = from;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const bool last = k + 1 == ops.size();
      const std::uint32_t nxt = last && to ? *to : fresh(base);
      NetRule r{cur, nxt, {}, {}, {}};
      (ops[k].first == 0 ? r.decr : ops[k].first == 1 ? r.reset : r.incr).push_back(ops[k].second);
      out.net.add_rule(std::move(r));
      cur = nxt;
    }
    return cur;
  };

  out.initial = NetConfig{initial.control, Marking(net.counters().size(), 0)};
  std::vector<Op> setup;
  for (std::uint32_t c = 0; c < initial.marking.size(); ++c)
    for (std::uint32_t k = 0; k < initial.marking[c]; ++k) setup.emplace_back(2, c);
  if (!setup.empty()) {
    const std::uint32_t start = fresh(net.controls()[initial.control]);
    chain(start, net.controls()[initial.control], setup, initial.control);
    out.initial.control = start;
  }

  for (const auto& r : net.rules()) {
    if (r.op_count() <= 1) {
      out.net.add_rule(r);
      continue;
    }
    std::vector<Op> ops;
    for (auto c : r.decr) ops.emplace_back(0, c);
    for (auto c : r.reset) ops.emplace_back(1, c);
    for (auto c : r.incr) ops.emplace_back(2, c);
    chain(r.from, net.controls()[r.from], ops, r.to);
  }

  out.target = target.control;
  if (zero_target) {
    std::vector<Op> drain;
    for (std::uint32_t c = 0; c < target.marking.size(); ++c)
      for (std::uint32_t k = 0; k < target.marking[c]; ++k) drain.emplace_back(0, c);
    if (!drain.empty()) out.target = chain(target.control, net.controls()[target.control], drain, std::nullopt);
  }
  for (const auto& r : out.net.rules()) {
    if (r.op_count() > 1) throw Error(ErrorKind::NormalizationFailure, "rule with several operations survived");
  }
  return out;
}

struct CoverCore {
  Sgtrs base;
  std::vector<std::string> counter_labels;
  std::vector<std::vector<std::string>> kill;  // [counter][state]
};

CoverCore build_cover_core(const ResetNet& net, EncodingReport& report, const std::vector<std::string>& extra_controls,
                           const std::vector<std::string>& extra_labels) {
  const auto& P = net.controls();
  const auto& C = net.counters();
  std::set<std::string> reserved{"spawn", "split", "dead"};
  LabelNamer namer(reserved);
  CoverCore core{Sgtrs{}, {}, {}};
  for (const auto& c : C) {
    core.counter_labels.push_back(namer("ctr_", c));
    report.names.emplace_back("counter " + c, core.counter_labels.back());
  }

  std::set<std::string> taken(P.begin(), P.end());
  taken.insert(extra_controls.begin(), extra_controls.end());
  std::vector<std::string> controls(P.begin(), P.end());
  for (const auto& c : C) {
    core.kill.emplace_back();
    for (const auto& p : P) {
      std::string name = "kill[" + c + "," + p + "]";
      while (taken.count(name)) name += "'";
      taken.insert(name);
      core.kill.back().push_back(name);
      controls.push_back(name);
      report.names.emplace_back("kill state " + c + " " + p, name);
    }
  }
  controls.insert(controls.end(), extra_controls.begin(), extra_controls.end());

  RankedAlphabet sigma;
  sigma.add("spawn", 0);
  sigma.add("split", 2);
  sigma.add("dead", 0);
  for (const auto& l : core.counter_labels) sigma.add(l, 0);
  for (const auto& l : extra_labels) sigma.add(l, 0);
  core.base = Sgtrs(controls, sigma);
  auto& b = core.base;

  const std::size_t cover_controls = P.size() + C.size() * P.size();
  for (std::size_t c = 0; c < C.size(); ++c) {
    for (std::size_t q = 0; q < cover_controls; ++q) {
      const auto& name = controls[q];
      if (std::find(core.kill[c].begin(), core.kill[c].end(), name) != core.kill[c].end()) continue;
      b.add_single(name, leaf(core.counter_labels[c]), name, leaf(core.counter_labels[c]));
    }
  }
  for (std::size_t q = 0; q < cover_controls; ++q) b.add_single(controls[q], leaf("spawn"), controls[q], leaf("spawn"));

  for (const auto& r : net.rules()) {
    const auto& from = P[r.from];
    const auto& to = P[r.to];
    if (!r.incr.empty()) {
      b.add_single(from, leaf("spawn"), to,
                   Tree::make("split", {leaf(core.counter_labels[r.incr[0]]), leaf("spawn")}));
    } else if (!r.decr.empty()) {
      b.add_single(from, leaf(core.counter_labels[r.decr[0]]), to, leaf("dead"));
    } else if (!r.reset.empty()) {
      const auto& k = core.kill[r.reset[0]][r.to];
      b.add_single(from, leaf("spawn"), k, leaf("spawn"));
      b.add_single(k, leaf("spawn"), to, leaf("spawn"));
    } else {
      b.add_single(from, leaf("spawn"), to, leaf("spawn"));
    }
  }
  return core;
}

}  // namespace

CoverEncoding encode_cover(const ResetNet& net, const NetConfig& initial, const NetConfig& target) {
  CoverEncoding out;
  auto norm = normalise(net, initial, target, true, out.report);
  auto core = build_cover_core(norm.net, out.report, {}, {});
  out.report.lifespan = 1;
  out.system = SenescentSystem{std::move(core.base), 1};
  out.initial = Configuration{norm.initial.control, leaf("spawn")};
  out.target = norm.target;
  out.normalised = std::move(norm.net);
  out.normalised_initial = norm.initial;
  out.normalised_target = norm.target;
  return out;
}

NTA counting_nta(const std::vector<std::string>& labels, const std::vector<std::uint32_t>& counts) {
  const std::size_t k = counts.size();
  // State = (count vector, spawn seen), mixed-radix encoded.
  std::size_t vectors = 1;
  for (auto m : counts) vectors *= m + 1;
  auto encode = [&](const std::vector<std::uint32_t>& v, unsigned spawn) {
    std::size_t id = 0;
    for (std::size_t c = k; c-- > 0;) id = id * (counts[c] + 1) + v[c];
    return static_cast<StateId>(id * 2 + spawn);
  };
  auto decode = [&](std::size_t id) {
    std::vector<std::uint32_t> v(k);
    std::size_t rest = id / 2;
    for (std::size_t c = 0; c < k; ++c) {
      v[c] = static_cast<std::uint32_t>(rest % (counts[c] + 1));
      rest /= counts[c] + 1;
    }
    return v;
  };

  RankedAlphabet sigma;
  sigma.add("split", 2);
  sigma.add("spawn", 0);
  sigma.add("dead", 0);
  for (const auto& l : labels) sigma.add(l, 0);
  NTA a(sigma);
  for (std::size_t s = 0; s < vectors * 2; ++s) {
    std::string name = "n";
    for (auto x : decode(s)) name += "_" + std::to_string(x);
    a.add_state(name + (s % 2 ? "_spawn" : ""));
  }
  const std::vector<std::uint32_t> zero(k, 0);
  a.add_rule({}, Label::intern("dead"), encode(zero, 0));
  a.add_rule({}, Label::intern("spawn"), encode(zero, 1));
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    auto v = zero;
    v[c] = 1;
    a.add_rule({}, Label::intern(labels[c]), encode(v, 0));
  }
  const Label split = Label::intern("split");
  for (std::size_t s1 = 0; s1 < vectors * 2; ++s1) {
    const auto v1 = decode(s1);
    for (std::size_t s2 = 0; s2 < vectors * 2; ++s2) {
      const unsigned spawn = s1 % 2 + s2 % 2;
      if (spawn > 1) continue;
      auto v = decode(s2);
      bool fits = true;
      for (std::size_t c = 0; c < k && fits; ++c) {
        v[c] += v1[c];
        fits = v[c] <= counts[c];
      }
      if (fits) a.add_rule({static_cast<StateId>(s1), static_cast<StateId>(s2)}, split, encode(v, spawn));
    }
  }
  a.add_final(encode(counts, 1));
  return a;
}

ReachEncoding encode_reach(const ResetNet& net, const NetConfig& initial, const NetConfig& target) {
  ReachEncoding out;
  auto norm = normalise(net, initial, target, false, out.report);
  std::string final_control = "final";
  while (norm.net.find_control(final_control)) final_control += "_";
  out.report.names.emplace_back("final control", final_control);

  std::vector<std::string> tgt;
  {
    std::set<std::string> reserved{"spawn", "split", "dead"};
    LabelNamer namer(reserved);
    for (const auto& c : norm.net.counters()) namer("ctr_", c);
    for (const auto& c : norm.net.counters()) {
      tgt.push_back(namer("tgt_", c));
      out.report.names.emplace_back("target counter " + c, tgt.back());
    }
  }
  auto core = build_cover_core(norm.net, out.report, {final_control}, tgt);
  auto& b = core.base;
  const auto& P = norm.net.controls();
  b.add_single(P[norm.target], leaf("spawn"), final_control, leaf("spawn"));
  for (std::size_t c = 0; c < tgt.size(); ++c) {
    b.add_single(final_control, leaf(core.counter_labels[c]), final_control, leaf(tgt[c]));
  }
  for (std::size_t c = 0; c < tgt.size(); ++c)
    for (const auto& k : core.kill[c]) b.add_single(k, leaf(core.counter_labels[c]), k, leaf("dead"));

  out.report.lifespan = 1;
  out.target_trees = counting_nta(tgt, target.marking);
  out.system = SenescentSystem{std::move(b), 1};
  out.initial = Configuration{norm.initial.control, leaf("spawn")};
  out.target = out.system.base.control(final_control);
  out.normalised = std::move(norm.net);
  out.normalised_initial = norm.initial;
  return out;
}

}  // namespace senescent
