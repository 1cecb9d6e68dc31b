// Text formats for every input and output of the library.  Parsers report
// problems as ParseError with a 1-based line and column; `#` at the start of a
// token comments out the rest of the line.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "senescent/automata.hpp"
#include "senescent/mpds.hpp"
#include "senescent/resetpn.hpp"
#include "senescent/senescent.hpp"

namespace senescent {

/// `a(b,c(d))`.  Labels are identifiers or `$i` context variables.
Tree parse_tree(std::string_view text);
/// Also checks ranks against `alphabet`; mismatches are ParseErrors.
Tree parse_tree(std::string_view text, const RankedAlphabet& alphabet);

/// Header `nta`, then `rule q1 .. qn -> a -> q` and `final q` lines.
NTA parse_nta(std::string_view text);
std::string print_nta(const NTA& automaton);

/// Header `ra`, then `trans q -a-> q'`, `init q`, `final q` lines.
RegularAutomaton parse_ra(std::string_view text);
std::string print_ra(const RegularAutomaton& automaton);

/// A system file: `controls`, `alphabet a:2 ...`, optional `lifespan N`,
/// named `nta NAME ... end` blocks, `rule q1 <side> -> q2 <side> [emits S]`
/// where a side is `single(<tree>)` or a block name, and optional
/// `init q <tree>` / `target q` lines.
struct SystemFile {
  SenescentSystem system;
  std::optional<Configuration> initial;
  std::optional<ControlId> target;
};

SystemFile parse_system(std::string_view text);
std::string print_system(const SenescentSystem& system, const std::optional<Configuration>& initial = {},
                         const std::optional<ControlId>& target = {});

/// `counters ...`, `controls ...`, `rule q {incr c1, decr c2, reset c3} q'`.
ResetNet parse_net(std::string_view text);
std::string print_net(const ResetNet& net);
/// `c1=3 c2=0`, separated by spaces or commas; unnamed counters are 0.
Marking parse_marking(const ResetNet& net, std::string_view text);
/// A control followed by a marking, e.g. `q c1=3`.
NetConfig parse_net_config(const ResetNet& net, std::string_view text);

/// `mpds n=<k> scope=<W>`, then `push i q q' a`, `int i q q'`, `pop i q a q'`
/// and optional `init q` / `target q` lines.
Mpds parse_mpds(std::string_view text);
std::string print_mpds(const Mpds& mpds);

/// `apply <rule> at <position> insert <tree>` lines.
std::vector<WitnessStep> parse_witness(std::string_view text);

}  // namespace senescent
