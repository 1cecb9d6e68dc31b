#include "senescent/manifest.hpp"

#include <cstdio>

#include "json.hpp"
#include "senescent/errors.hpp"

namespace senescent {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["subcommand"] = m.subcommand;
  j["input_digests"] = m.input_digests;
  j["bounds"] = m.bounds;
  j["verdict"] = m.verdict;
  j["witness_path"] = m.witness_path;
  j["wall_time"] = m.wall_time;
  return j.dump();
}

RunManifest manifest_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.input_digests = j.at("input_digests").get<std::map<std::string, std::string>>();
    m.bounds = j.at("bounds").get<std::map<std::string, std::int64_t>>();
    m.verdict = j.at("verdict").get<std::string>();
    m.witness_path = j.at("witness_path").get<std::string>();
    m.wall_time = j.at("wall_time").get<double>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad manifest: ") + e.what());
  }
}

}  // namespace senescent
