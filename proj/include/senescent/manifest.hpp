// Machine-readable record of one CLI run.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace senescent {

struct RunManifest {
  std::string subcommand;
  /// Input path -> FNV-1a 64-bit digest of its bytes, in hex.
  std::map<std::string, std::string> input_digests;
  std::map<std::string, std::int64_t> bounds;
  std::string verdict;  // YES, NO or UNKNOWN
  std::string witness_path;
  /// 0 unless timing was requested, so that reruns are byte-identical.
  double wall_time = 0;
};

std::string fnv1a_hex(std::string_view bytes);

/// One line, keys in a fixed order.
std::string manifest_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

}  // namespace senescent
