#include "senescent/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "senescent/errors.hpp"

namespace senescent {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over one line; columns are 1-based.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line, std::size_t offset = 0)
      : text_(text), line_(line), offset_(offset) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, offset_ + pos_ + 1, message);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  // Whitespace-delimited token.
  std::string word(std::string_view what = "a name") {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected " + std::string(what));
    return std::string(text_.substr(start, pos_ - start));
  }
  // Token made of characters outside `stop` and whitespace.
  std::string until(std::string_view stop, std::string_view what) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           stop.find(text_[pos_]) == std::string_view::npos) {
      ++pos_;
    }
    if (start == pos_) fail("expected " + std::string(what));
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string label() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '$') ++pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_ || (text_[start] == '$' && pos_ == start + 1)) fail("expected a label");
    if (text_[start] != '$' && std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      fail("labels must not start with a digit");
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  template <typename T>
  T number() {
    skip_ws();
    T value{};
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  std::string_view text() const { return text_; }
  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  for (std::size_t n = 1; start <= text.size(); ++n) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        line = line.substr(0, i);
        break;
      }
    }
    bool blank = std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) out.push_back({n, line});
    start = end + 1;
  }
  return out;
}

Tree tree_at(Cursor& c) {
  const std::string name = c.label();
  std::vector<Tree> children;
  if (c.accept("(")) {
    do {
      children.push_back(tree_at(c));
    } while (c.accept(","));
    c.expect(")");
  }
  return Tree::make(Label::intern(name), children);
}

Tree checked(Cursor& c, const RankedAlphabet* alphabet) {
  const std::size_t at = c.pos();
  Tree t = tree_at(c);
  if (alphabet) {
    for (const auto& node : t.nodes()) {
      if (variable_index(node.label)) continue;
      if (!alphabet->contains(node.label)) {
        c.seek(at);
        c.fail("symbol '" + node.label.name() + "' is not in the alphabet");
      }
      if (alphabet->rank(node.label) != node.arity) {
        c.seek(at);
        c.fail("symbol '" + node.label.name() + "' used with " + std::to_string(node.arity) + " children, rank is " +
               std::to_string(alphabet->rank(node.label)));
      }
    }
  }
  return t;
}

Tree tree_from(std::string_view text, const RankedAlphabet* alphabet) {
  Cursor c(text, 1);
  Tree t = checked(c, alphabet);
  if (!c.done()) c.fail("trailing text after tree");
  return t;
}

// Body lines of an NTA, shared by the standalone format and system blocks.
void nta_line(NTA& a, Cursor& c) {
  const std::string kw = c.word("'rule' or 'final'");
  if (kw == "final") {
    a.add_final(a.state(c.word("a state")));
  } else if (kw == "rule") {
    std::vector<StateId> children;
    while (!c.accept("->")) children.push_back(a.state(c.word("a state")));
    const std::size_t at = c.pos();
    const Label label = Label::intern(c.label());
    c.expect("->");
    const StateId target = a.state(c.word("a state"));
    try {
      a.add_rule(std::move(children), label, target);
    } catch (const Error& e) {
      c.seek(at);
      c.fail(e.what());
    }
  } else {
    c.fail("unknown NTA directive '" + kw + "'");
  }
  if (!c.done()) c.fail("trailing text");
}

std::vector<std::string> state_labels(std::size_t count, auto name_of) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  bool usable = true;
  for (std::size_t s = 0; s < count; ++s) {
    const std::string& n = name_of(s);
    usable = usable && !n.empty() && n != "->" && n.find_first_of(" \t#") == std::string::npos &&
             seen.insert(n).second;
    names.push_back(n);
  }
  if (!usable) {
    for (std::size_t s = 0; s < count; ++s) names[s] = "s" + std::to_string(s);
  }
  return names;
}

std::string nta_body(const NTA& a) {
  const auto names = state_labels(a.state_count(), [&](std::size_t s) -> const std::string& { return a.state_name(static_cast<StateId>(s)); });
  std::string out;
  for (const auto& r : a.rules()) {
    out += "rule";
    for (StateId s : r.children) out += " " + names[s];
    out += " -> " + r.label.name() + " -> " + names[r.target] + "\n";
  }
  for (StateId f : a.finals()) out += "final " + names[f] + "\n";
  return out;
}

void check_header(const std::vector<Line>& lines, std::string_view header) {
  if (lines.empty()) throw ParseError(1, 1, "expected header '" + std::string(header) + "'");
  Cursor c(lines[0].text, lines[0].number);
  c.expect(header);
  if (!c.done()) c.fail("trailing text after header");
}

}  // namespace

Tree parse_tree(std::string_view text) { return tree_from(text, nullptr); }
Tree parse_tree(std::string_view text, const RankedAlphabet& alphabet) { return tree_from(text, &alphabet); }

NTA parse_nta(std::string_view text) {
  const auto lines = lines_of(text);
  check_header(lines, "nta");
  NTA a;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Cursor c(lines[i].text, lines[i].number);
    nta_line(a, c);
  }
  return a;
}

std::string print_nta(const NTA& automaton) { return "nta\n" + nta_body(automaton); }

RegularAutomaton parse_ra(std::string_view text) {
  const auto lines = lines_of(text);
  check_header(lines, "ra");
  RegularAutomaton a;
  bool has_init = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Cursor c(lines[i].text, lines[i].number);
    const std::string kw = c.word("a directive");
    if (kw == "trans") {
      const StateId from = a.state(c.word("a state"));
      c.expect("-");
      const std::string symbol = c.until("-", "a symbol");
      c.expect("->");
      a.add_transition(from, symbol, a.state(c.word("a state")));
    } else if (kw == "init") {
      a.set_initial(a.state(c.word("a state")));
      has_init = true;
    } else if (kw == "final") {
      a.add_final(a.state(c.word("a state")));
    } else {
      c.fail("unknown directive '" + kw + "'");
    }
    if (!c.done()) c.fail("trailing text");
  }
  if (!has_init && a.state_count() == 0) a.set_initial(a.state("init"));
  return a;
}

std::string print_ra(const RegularAutomaton& automaton) {
  const auto names = state_labels(automaton.state_count(), [&](std::size_t s) -> const std::string& {
    return automaton.state_name(static_cast<StateId>(s));
  });
  std::string out = "ra\ninit " + names[automaton.initial()] + "\n";
  for (const auto& t : automaton.transitions()) {
    out += "trans " + names[t.from] + " -" + t.symbol + "-> " + names[t.to] + "\n";
  }
  for (StateId f : automaton.finals()) out += "final " + names[f] + "\n";
  return out;
}

SystemFile parse_system(std::string_view text) {
  const auto lines = lines_of(text);
  std::vector<std::string> controls;
  RankedAlphabet alphabet;
  bool have_controls = false;
  bool have_alphabet = false;
  SystemFile out;
  std::map<std::string, NTA> blocks;

  // Pending lines that need the full header before they can be read.
  std::vector<Line> rule_lines;
  std::optional<Line> init_line;
  std::optional<Line> target_line;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    Cursor c(lines[i].text, lines[i].number);
    const std::string kw = c.word("a directive");
    if (kw == "controls") {
      if (have_controls) c.fail("duplicate 'controls' line");
      have_controls = true;
      while (!c.done()) {
        std::string name = c.word("a control");
        if (std::find(controls.begin(), controls.end(), name) != controls.end()) c.fail("duplicate control '" + name + "'");
        controls.push_back(std::move(name));
      }
    } else if (kw == "alphabet") {
      have_alphabet = true;
      while (!c.done()) {
        const std::string name = c.label();
        c.expect(":");
        const auto rank = c.number<unsigned>();
        try {
          alphabet.add(name, rank);
        } catch (const Error& e) {
          c.fail(e.what());
        }
      }
    } else if (kw == "lifespan") {
      out.system.lifespan = c.number<unsigned>();
      if (out.system.lifespan > 200) c.fail("lifespan too large");
    } else if (kw == "nta") {
      const std::string name = c.label();
      if (blocks.contains(name)) c.fail("duplicate automaton '" + name + "'");
      if (!c.done()) c.fail("trailing text");
      NTA a;
      bool closed = false;
      for (++i; i < lines.size(); ++i) {
        Cursor b(lines[i].text, lines[i].number);
        if (b.accept("end")) {
          if (!b.done()) b.fail("trailing text");
          closed = true;
          break;
        }
        nta_line(a, b);
      }
      if (!closed) c.fail("automaton '" + name + "' has no 'end'");
      blocks.emplace(name, std::move(a));
    } else if (kw == "rule") {
      rule_lines.push_back(lines[i]);
    } else if (kw == "init") {
      if (init_line) c.fail("duplicate 'init' line");
      init_line = lines[i];
    } else if (kw == "target") {
      if (target_line) c.fail("duplicate 'target' line");
      target_line = lines[i];
    } else {
      c.fail("unknown directive '" + kw + "'");
    }
  }
  if (!have_controls) throw ParseError(1, 1, "missing 'controls' line");
  if (!have_alphabet) throw ParseError(1, 1, "missing 'alphabet' line");
  out.system.base = Sgtrs(controls, alphabet);
  Sgtrs& sys = out.system.base;

  auto control_at = [&](Cursor& c) {
    const std::size_t at = c.pos();
    const std::string name = c.word("a control");
    if (auto id = sys.find_control(name)) return *id;
    c.seek(at);
    c.fail("unknown control '" + name + "'");
  };
  auto side = [&](Cursor& c) -> NTA {
    const std::size_t at = c.pos();
    if (c.accept("single(")) {
      Tree t = checked(c, &alphabet);
      c.expect(")");
      return singleton_nta(t, &alphabet);
    }
    const std::string name = c.until("", "an automaton");
    auto it = blocks.find(name);
    if (it == blocks.end()) {
      c.seek(at);
      c.fail("unknown automaton '" + name + "'");
    }
    return it->second;
  };

  for (const Line& l : rule_lines) {
    Cursor c(l.text, l.number);
    c.expect("rule");
    Rule r;
    r.source = control_at(c);
    r.lhs = side(c);
    c.expect("->");
    r.target = control_at(c);
    r.rhs = side(c);
    if (c.accept("emits")) r.output = c.word("an output symbol");
    if (!c.done()) c.fail("trailing text");
    try {
      sys.add_rule(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      c.seek(0);
      c.fail(e.what());
    }
  }
  if (init_line) {
    Cursor c(init_line->text, init_line->number);
    c.expect("init");
    const ControlId q = control_at(c);
    Tree t = checked(c, &alphabet);
    if (!c.done()) c.fail("trailing text");
    out.initial = Configuration{q, std::move(t)};
  }
  if (target_line) {
    Cursor c(target_line->text, target_line->number);
    c.expect("target");
    out.target = control_at(c);
    if (!c.done()) c.fail("trailing text");
  }
  return out;
}

std::string print_system(const SenescentSystem& system, const std::optional<Configuration>& initial,
                         const std::optional<ControlId>& target) {
  const Sgtrs& sys = system.base;
  std::string out = "controls";
  for (const auto& c : sys.controls()) out += " " + c;
  out += "\nalphabet";
  for (const auto& [label, rank] : sys.alphabet().symbols()) out += " " + label.name() + ":" + std::to_string(rank);
  out += "\nlifespan " + std::to_string(system.lifespan) + "\n";

  std::string blocks;
  std::string rules;
  std::size_t next_block = 0;
  auto side = [&](const NTA& a) {
    if (a.singleton()) return "single(" + a.singleton()->to_string() + ")";
    const std::string name = "nta" + std::to_string(next_block++);
    blocks += "nta " + name + "\n" + nta_body(a) + "end\n";
    return name;
  };
  for (const auto& r : sys.rules()) {
    const std::string lhs = side(r.lhs);
    const std::string rhs = side(r.rhs);
    rules += "rule " + sys.control_name(r.source) + " " + lhs + " -> " + sys.control_name(r.target) + " " + rhs;
    if (r.output) rules += " emits " + *r.output;
    rules += "\n";
  }
  out += blocks + rules;
  if (initial) out += "init " + sys.control_name(initial->control) + " " + initial->tree.to_string() + "\n";
  if (target) out += "target " + sys.control_name(*target) + "\n";
  return out;
}

ResetNet parse_net(std::string_view text) {
  ResetNet net;
  bool have_counters = false;
  bool have_controls = false;
  for (const Line& l : lines_of(text)) {
    Cursor c(l.text, l.number);
    const std::string kw = c.word("a directive");
    if (kw == "counters") {
      have_counters = true;
      while (!c.done()) net.add_counter(c.word("a counter"));
    } else if (kw == "controls") {
      have_controls = true;
      while (!c.done()) net.add_control(c.word("a control"));
    } else if (kw == "rule") {
      if (!have_counters || !have_controls) c.fail("rules must follow 'counters' and 'controls'");
      auto control = [&]() {
        const std::size_t at = c.pos();
        const std::string name = c.until("{", "a control");
        if (auto id = net.find_control(name)) return *id;
        c.seek(at);
        c.fail("unknown control '" + name + "'");
      };
      NetRule r;
      r.from = control();
      c.expect("{");
      if (!c.accept("}")) {
        do {
          const std::string op = c.word("incr, decr or reset");
          const std::size_t at = c.pos();
          const std::string name = c.until(",}", "a counter");
          auto id = net.find_counter(name);
          if (!id) {
            c.seek(at);
            c.fail("unknown counter '" + name + "'");
          }
          if (op == "incr") {
            r.incr.push_back(*id);
          } else if (op == "decr") {
            r.decr.push_back(*id);
          } else if (op == "reset") {
            r.reset.push_back(*id);
          } else {
            c.seek(at);
            c.fail("unknown operation '" + op + "'");
          }
        } while (c.accept(","));
        c.expect("}");
      }
      r.to = control();
      if (!c.done()) c.fail("trailing text");
      net.add_rule(std::move(r));
    } else {
      c.fail("unknown directive '" + kw + "'");
    }
  }
  if (!have_controls) throw ParseError(1, 1, "missing 'controls' line");
  return net;
}

std::string print_net(const ResetNet& net) {
  std::string out = "counters";
  for (const auto& c : net.counters()) out += " " + c;
  out += "\ncontrols";
  for (const auto& c : net.controls()) out += " " + c;
  out += "\n";
  for (const auto& r : net.rules()) {
    std::vector<std::string> ops;
    for (auto c : r.decr) ops.push_back("decr " + net.counters()[c]);
    for (auto c : r.reset) ops.push_back("reset " + net.counters()[c]);
    for (auto c : r.incr) ops.push_back("incr " + net.counters()[c]);
    std::string joined;
    for (std::size_t i = 0; i < ops.size(); ++i) joined += (i ? ", " : "") + ops[i];
    out += "rule " + net.controls()[r.from] + " {" + joined + "} " + net.controls()[r.to] + "\n";
  }
  return out;
}

Marking parse_marking(const ResetNet& net, std::string_view text) {
  Marking m(net.counters().size(), 0);
  Cursor c(text, 1);
  while (!c.done()) {
    if (c.accept(",")) continue;
    const std::size_t at = c.pos();
    const std::string name = c.until("=,", "a counter");
    auto id = net.find_counter(name);
    if (!id) {
      c.seek(at);
      c.fail("unknown counter '" + name + "'");
    }
    c.expect("=");
    m[*id] = c.number<std::uint32_t>();
  }
  return m;
}

NetConfig parse_net_config(const ResetNet& net, std::string_view text) {
  Cursor c(text, 1);
  const std::string name = c.word("a control");
  auto id = net.find_control(name);
  if (!id) {
    c.seek(0);
    c.fail("unknown control '" + name + "'");
  }
  return NetConfig{*id, parse_marking(net, text.substr(c.pos()))};
}

Mpds parse_mpds(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError(1, 1, "expected 'mpds n=<k> scope=<W>'");
  Cursor h(lines[0].text, lines[0].number);
  h.expect("mpds");
  h.expect("n=");
  const auto n = h.number<unsigned>();
  h.expect("scope=");
  const auto w = h.number<unsigned>();
  if (!h.done()) h.fail("trailing text");
  if (n == 0) h.fail("an MPDS needs at least one stack");
  Mpds m(n, w);

  // Controls and symbols are declared by use, in order of appearance.
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Cursor c(lines[i].text, lines[i].number);
    const std::string kw = c.word("a directive");
    auto stack = [&]() {
      const auto s = c.number<unsigned>();
      if (s == 0 || s > n) c.fail("stack index out of range");
      return s;
    };
    try {
      if (kw == "push") {
        const unsigned s = stack();
        const std::string q = c.word("a control"), q2 = c.word("a control"), a = c.word("a symbol");
        m.push(s, q, q2, a);
      } else if (kw == "int") {
        const unsigned s = stack();
        const std::string q = c.word("a control"), q2 = c.word("a control");
        m.internal(s, q, q2);
      } else if (kw == "pop") {
        const unsigned s = stack();
        const std::string q = c.word("a control"), a = c.word("a symbol"), q2 = c.word("a control");
        m.pop(s, q, a, q2);
      } else if (kw == "init") {
        m.initial = m.add_control(c.word("a control"));
      } else if (kw == "target") {
        m.target = m.add_control(c.word("a control"));
      } else if (kw == "controls") {
        while (!c.done()) m.add_control(c.word("a control"));
      } else {
        c.fail("unknown directive '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      c.seek(0);
      c.fail(e.what());
    }
    if (!c.done()) c.fail("trailing text");
  }
  return m;
}

std::string print_mpds(const Mpds& mpds) {
  std::string out = "mpds n=" + std::to_string(mpds.stacks()) + " scope=" + std::to_string(mpds.scope()) + "\n";
  out += "controls";
  for (const auto& c : mpds.controls()) out += " " + c;
  out += "\n";
  const auto& q = mpds.controls();
  const auto& a = mpds.symbols();
  for (const auto& r : mpds.rules()) {
    const std::string s = std::to_string(r.stack);
    switch (r.kind) {
      case MpdsRule::Kind::Push: out += "push " + s + " " + q[r.from] + " " + q[r.to] + " " + a[r.symbol] + "\n"; break;
      case MpdsRule::Kind::Int: out += "int " + s + " " + q[r.from] + " " + q[r.to] + "\n"; break;
      case MpdsRule::Kind::Pop: out += "pop " + s + " " + q[r.from] + " " + a[r.symbol] + " " + q[r.to] + "\n"; break;
    }
  }
  if (mpds.initial) out += "init " + q[*mpds.initial] + "\n";
  if (mpds.target) out += "target " + q[*mpds.target] + "\n";
  return out;
}

std::vector<WitnessStep> parse_witness(std::string_view text) {
  std::vector<WitnessStep> out;
  for (const Line& l : lines_of(text)) {
    Cursor c(l.text, l.number);
    c.expect("apply");
    WitnessStep s;
    s.rule = c.number<std::size_t>();
    c.expect("at");
    const std::size_t at = c.pos();
    const std::string pos = c.word("a position");
    try {
      s.position = position_from_string(pos);
    } catch (const Error& e) {
      c.seek(at);
      c.fail(e.what());
    }
    c.expect("insert");
    s.rhs = tree_at(c);
    if (!c.done()) c.fail("trailing text");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace senescent
