// Constructions of senescent systems from scope-bounded pushdown systems and
// from reset nets.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "senescent/mpds.hpp"
#include "senescent/resetpn.hpp"
#include "senescent/senescent.hpp"

namespace senescent {

struct EncodingReport {
  /// (source object, encoded name), e.g. ("control q", "q@1").
  std::vector<std::pair<std::string, std::string>> names;
  unsigned lifespan = 0;

  /// One `orig<TAB>encoded` line per entry.
  std::string sidecar() const;
};

struct ScopedEncoding {
  SenescentSystem system;
  Configuration initial;
  ControlId target = 0;
  EncodingReport report;
  /// Stack count of the encoded system; a single stack is padded with an
  /// idle second one so that every phase switch changes control.
  unsigned stacks = 0;
};

/// Requires mpds.initial and mpds.target.
ScopedEncoding encode_scoped(const Mpds& mpds);

/// Cost of one phase switch, and of a whole round, in steps of the encoded
/// system.  Encoded run length = 3 + moves + switch_cost * switches.
unsigned scoped_switch_cost(const Mpds& mpds);

struct CoverEncoding {
  SenescentSystem system;
  Configuration initial;
  ControlId target = 0;
  /// The single-operation net actually encoded, with the zero-marking goal.
  ResetNet normalised;
  NetConfig normalised_initial;
  std::uint32_t normalised_target = 0;
  EncodingReport report;
};

/// Covering `target` from `initial` becomes reaching control `target`.
CoverEncoding encode_cover(const ResetNet& net, const NetConfig& initial, const NetConfig& target);

struct ReachEncoding {
  SenescentSystem system;
  Configuration initial;
  ControlId target = 0;
  NTA target_trees;
  ResetNet normalised;
  NetConfig normalised_initial;
  EncodingReport report;
};

ReachEncoding encode_reach(const ResetNet& net, const NetConfig& initial, const NetConfig& target);

/// Trees with split inner nodes, one spawn leaf, exactly counts[c] leaves
/// labelled labels[c], every other leaf dead.
NTA counting_nta(const std::vector<std::string>& labels, const std::vector<std::uint32_t>& counts);

}  // namespace senescent
