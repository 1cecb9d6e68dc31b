// Command-line front end.  Exit codes: 0 YES, 1 NO (complete procedures
// only), 2 UNKNOWN, 3 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "senescent/encodings.hpp"
#include "senescent/errors.hpp"
#include "senescent/formats.hpp"
#include "senescent/manifest.hpp"
#include "senescent/summaries.hpp"

using namespace senescent;

namespace {

enum Exit { Yes = 0, No = 1, Unknown = 2, InputError = 3 };

struct Common {
  std::string format = "text";
  bool timing = false;
  std::string witness;
};

struct Run {
  RunManifest manifest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  const Common* common = nullptr;

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    manifest.input_digests[path] = fnv1a_hex(ss.str());
    return ss.str();
  }

  void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
    out << text;
  }

  // Prints the manifest (json) or `text` and returns the exit code.
  int finish(Exit code, const std::string& text) {
    manifest.verdict = code == Yes ? "YES" : code == No ? "NO" : "UNKNOWN";
    if (common->timing) {
      manifest.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    if (common->format == "json") {
      std::cout << manifest_json(manifest) << "\n";
    } else {
      std::cout << text;
      if (common->timing) std::cout << "time " << manifest.wall_time << " s\n";
    }
    return code;
  }
};

std::string unknown_reason(const Verdict& v) {
  if (v.exhausted == "states") return "state limit reached";
  if (v.exhausted == "depth") return "depth bound reached";
  return "RHS bound below the system's RHS languages";
}

// `q:treefile`, or the system file's own init line.
Configuration initial_of(Run& run, const SystemFile& file, const std::string& spec) {
  if (spec.empty()) {
    if (!file.initial) throw Error(ErrorKind::Parse, "no initial configuration: pass --init or add an 'init' line");
    return *file.initial;
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "--init expects <control>:<treefile>");
  const ControlId q = file.system.base.control(spec.substr(0, colon));
  Tree t = parse_tree(run.read(spec.substr(colon + 1)), file.system.base.alphabet());
  return Configuration{q, std::move(t)};
}

ControlId target_of(const SystemFile& file, const std::string& name) {
  if (!name.empty()) return file.system.base.control(name);
  if (!file.target) throw Error(ErrorKind::Parse, "no target: pass --target or add a 'target' line");
  return *file.target;
}

int report_search(Run& run, const Verdict& v, const std::string& goal) {
  run.manifest.bounds["rhs_bound"] = static_cast<std::int64_t>(v.rhs_bound);
  std::ostringstream out;
  if (v.reachable()) {
    out << "REACHABLE " << goal << " in " << v.witness.size() << " steps\n" << format_witness(v.witness);
    if (!run.common->witness.empty()) {
      run.write(run.common->witness, format_witness(v.witness));
      run.manifest.witness_path = run.common->witness;
    }
    return run.finish(Yes, out.str());
  }
  if (v.exhaustive) {
    out << "UNREACHABLE " << goal << " (lifespan-restricted state space exhausted, " << v.states << " states)\n";
    return run.finish(No, out.str());
  }
  out << "UNKNOWN " << goal << ": " << unknown_reason(v) << " (depth " << v.depth_reached << ", " << v.states
      << " states, rhs-size " << v.rhs_bound << ")\n";
  return run.finish(Unknown, out.str());
}

void add_common(CLI::App* app, Common& common) {
  app->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app->add_flag("--timing", common.timing, "Record wall time in the manifest");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Senescent ground tree rewrite systems, reset nets and their reductions"};
  app.require_subcommand(1);
  Common common;

  SearchBounds search;
  std::optional<unsigned> lifespan;
  std::string system_path, init_spec, target_name, target_nta, witness_path;
  auto search_options = [&](CLI::App* sub) {
    sub->add_option("system", system_path, "System file")->required();
    sub->add_option("--init", init_spec, "Initial configuration as <control>:<treefile>");
    sub->add_option("--target", target_name, "Target control");
    sub->add_option("--lifespan", lifespan, "Lifespan (overrides the file)");
    sub->add_option("--depth", search.depth, "Depth bound")->default_val(10);
    sub->add_option("--rhs-size", search.rhs_size, "Largest inserted tree (0: largest singleton)");
    sub->add_option("--jobs", search.jobs, "Worker threads")->default_val(1);
    sub->add_option("--max-states", search.max_states, "State limit");
    sub->add_option("-w,--witness", common.witness, "Write the witness to this file");
    add_common(sub, common);
  };

  auto* reach = app.add_subcommand("reach", "Control-state reachability by bounded exploration");
  search_options(reach);
  auto* regular = app.add_subcommand("reach-regular", "Reach a control with a tree accepted by an NTA");
  search_options(regular);
  regular->add_option("--trees", target_nta, "NTA file for the target trees")->required();

  std::string net_path, from_cfg, to_cfg, mode = "backward";
  std::size_t net_depth = 12, net_states = 1'000'000;
  auto* cover = app.add_subcommand("cover", "Reset-net coverability");
  cover->add_option("net", net_path, "Net file")->required();
  cover->add_option("--from", from_cfg, "Initial configuration, e.g. 'q c1=2'")->required();
  cover->add_option("--target", to_cfg, "Configuration to cover")->required();
  cover->add_option("--mode", mode, "backward (complete) or forward (bounded)")
      ->check(CLI::IsMember({"backward", "forward"}));
  cover->add_option("--depth", net_depth, "Depth bound of the forward mode");
  cover->add_option("--max-states", net_states, "State limit of the forward mode");
  add_common(cover, common);

  auto* pn_reach = app.add_subcommand("pn-reach", "Exact reset-net reachability by bounded search");
  pn_reach->add_option("net", net_path, "Net file")->required();
  pn_reach->add_option("--from", from_cfg, "Initial configuration")->required();
  pn_reach->add_option("--target", to_cfg, "Target configuration")->required();
  pn_reach->add_option("--depth", net_depth, "Depth bound")->default_val(10);
  pn_reach->add_option("--max-states", net_states, "State limit");
  add_common(pn_reach, common);

  std::string kind, input_path, output_path;
  auto* encode = app.add_subcommand("encode", "Build a senescent system from an MPDS or a net");
  encode->add_option("kind", kind, "scoped, cover or reach")->required()->check(CLI::IsMember({"scoped", "cover", "reach"}));
  encode->add_option("input", input_path, "MPDS or net file")->required();
  encode->add_option("-o,--output", output_path, "System file to write")->required();
  encode->add_option("--from", from_cfg, "Initial net configuration");
  encode->add_option("--target", to_cfg, "Target net configuration");
  add_common(encode, common);

  PnreachBounds summary;
  std::string emit_net;
  auto* pnreach = app.add_subcommand("pnreach", "Summary route: interface net plus backward coverability");
  pnreach->add_option("system", system_path, "System file")->required();
  pnreach->add_option("--init", init_spec, "Initial configuration as <control>:<treefile>");
  pnreach->add_option("--target", target_name, "Target control");
  pnreach->add_option("--lifespan", lifespan, "Lifespan (overrides the file)");
  pnreach->add_option("--parikh-depth", summary.parikh.depth, "Depth of interface exploration")->default_val(8);
  pnreach->add_option("--rhs-size", summary.parikh.rhs_size, "Largest inserted tree (0: largest singleton)");
  pnreach->add_option("--max-sequences", summary.max_sequences, "Limit on summary sequences");
  pnreach->add_option("--emit-net", emit_net, "Write the constructed net");
  add_common(pnreach, common);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a system, net, MPDS or automaton file");
  validate->add_option("file", validate_path, "Input file")->required();
  add_common(validate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return InputError;
  }

  Run run;
  run.common = &common;
  run.manifest.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (reach->parsed() || regular->parsed()) {
      SystemFile file = parse_system(run.read(system_path));
      // --lifespan shares storage with --depth above only to reuse the
      // option plumbing; restore the real depth.
      if (lifespan) file.system.lifespan = *lifespan;
      search.depth = reach->parsed() ? reach->get_option("--depth")->as<std::size_t>()
                                     : regular->get_option("--depth")->as<std::size_t>();
      const Configuration init = initial_of(run, file, init_spec);
      const ControlId target = target_of(file, target_name);
      run.manifest.bounds = {{"lifespan", file.system.lifespan},
                             {"depth", static_cast<std::int64_t>(search.depth)},
                             {"rhs_size", static_cast<std::int64_t>(search.rhs_size)},
                             {"jobs", search.jobs},
                             {"max_states", static_cast<std::int64_t>(search.max_states)}};
      const std::string goal = file.system.base.control_name(target);
      if (reach->parsed()) return report_search(run, reach_control(file.system, init, target, search), goal);
      NTA trees = parse_nta(run.read(target_nta));
      return report_search(run, reach_regular(file.system, init, target, trees, search), goal);
    }

    if (cover->parsed() || pn_reach->parsed()) {
      const ResetNet net = parse_net(run.read(net_path));
      const NetConfig from = parse_net_config(net, from_cfg);
      const NetConfig to = parse_net_config(net, to_cfg);
      std::ostringstream out;
      auto witness = [&](const std::vector<std::size_t>& rules) {
        for (const auto& c : pn_replay(net, from, rules)) out << "  " << format_config(net, c) << "\n";
      };
      if (cover->parsed() && mode == "backward") {
        run.manifest.bounds = {{"backward", 1}};
        const auto r = pn_cover_backward(net, from, to);
        if (!r.covered) {
          out << "NOT COVERABLE (basis of " << r.basis.size() << " elements)\n";
          return run.finish(No, out.str());
        }
        out << "COVERABLE in " << r.witness.size() << " steps\n";
        witness(r.witness);
        return run.finish(Yes, out.str());
      }
      run.manifest.bounds = {{"depth", static_cast<std::int64_t>(net_depth)},
                             {"max_states", static_cast<std::int64_t>(net_states)}};
      const NetVerdict v = cover->parsed() ? pn_cover_forward(net, from, to, net_depth, net_states)
                                           : pn_reach_forward(net, from, to, net_depth, net_states);
      const char* word = cover->parsed() ? "COVERABLE" : "REACHABLE";
      if (v.yes()) {
        out << word << " in " << v.witness.size() << " steps\n";
        witness(v.witness);
        return run.finish(Yes, out.str());
      }
      if (v.decided()) {
        out << "NOT " << word << " (" << v.states << " states, search saturated)\n";
        return run.finish(No, out.str());
      }
      out << "UNKNOWN: " << v.exhausted << " bound reached (depth " << v.depth_reached << ", " << v.states
          << " states)\n";
      return run.finish(Unknown, out.str());
    }

    if (encode->parsed()) {
      const std::string text = run.read(input_path);
      EncodingReport report;
      std::string system_text;
      if (kind == "scoped") {
        const Mpds m = parse_mpds(text);
        const ScopedEncoding e = encode_scoped(m);
        system_text = print_system(e.system, e.initial, e.target);
        report = e.report;
      } else {
        if (from_cfg.empty() || to_cfg.empty()) throw Error(ErrorKind::Parse, "net encodings need --from and --target");
        const ResetNet net = parse_net(text);
        const NetConfig from = parse_net_config(net, from_cfg);
        const NetConfig to = parse_net_config(net, to_cfg);
        if (kind == "cover") {
          const CoverEncoding e = encode_cover(net, from, to);
          system_text = print_system(e.system, e.initial, e.target);
          report = e.report;
        } else {
          const ReachEncoding e = encode_reach(net, from, to);
          system_text = print_system(e.system, e.initial, e.target);
          report = e.report;
          run.write(output_path + ".trees.nta", print_nta(e.target_trees));
        }
      }
      run.write(output_path, system_text);
      run.write(output_path + ".map", report.sidecar());
      run.manifest.witness_path = output_path;
      run.manifest.bounds = {{"lifespan", report.lifespan}};
      return run.finish(Yes, "wrote " + output_path + " (lifespan " + std::to_string(report.lifespan) + ")\n");
    }

    if (pnreach->parsed()) {
      SystemFile file = parse_system(run.read(system_path));
      if (lifespan) file.system.lifespan = *lifespan;
      const Configuration init = initial_of(run, file, init_spec);
      const ControlId target = target_of(file, target_name);
      run.manifest.bounds = {{"lifespan", file.system.lifespan},
                             {"parikh_depth", static_cast<std::int64_t>(summary.parikh.depth)},
                             {"rhs_size", static_cast<std::int64_t>(summary.parikh.rhs_size)},
                             {"max_sequences", static_cast<std::int64_t>(summary.max_sequences)}};
      const Pnreach pn = build_pnreach(file.system, init.control, init.tree, target, summary);
      if (!emit_net.empty()) {
        run.write(emit_net, print_net(pn.net));
        run.manifest.witness_path = emit_net;
      }
      const auto r = pn_cover_backward(pn.net, pn.initial, pn.target);
      std::ostringstream out;
      out << "net: " << pn.net.controls().size() << " controls, " << pn.net.rules().size() << " rules, "
          << pn.sequences << " summary sequences" << (pn.truncated ? " (truncated)" : "") << "\n";
      if (r.covered) {
        out << "REACHABLE " << file.system.base.control_name(target) << " (net run of " << r.witness.size()
            << " steps)\n";
        return run.finish(Yes, out.str());
      }
      out << "UNKNOWN: no summary run within parikh-depth " << summary.parikh.depth << "\n";
      return run.finish(Unknown, out.str());
    }

    if (validate->parsed()) {
      const std::string text = run.read(validate_path);
      std::istringstream in(text);
      std::string first;
      while (in >> first && first.starts_with("#")) {
        std::getline(in, first);
        first.clear();
      }
      std::ostringstream out;
      if (first == "mpds") {
        const Mpds m = parse_mpds(text);
        out << "mpds: " << m.stacks() << " stacks, scope " << m.scope() << ", " << m.controls().size()
            << " controls, " << m.rules().size() << " rules\n";
      } else if (first == "nta") {
        const NTA a = parse_nta(text);
        out << "nta: " << a.state_count() << " states, " << a.rules().size() << " rules\n";
      } else if (first == "ra") {
        const RegularAutomaton a = parse_ra(text);
        out << "ra: " << a.state_count() << " states, " << a.transitions().size() << " transitions\n";
      } else if (first == "counters") {
        const ResetNet net = parse_net(text);
        out << "net: " << net.controls().size() << " controls, " << net.counters().size() << " counters, "
            << net.rules().size() << " rules\n";
      } else {
        const SystemFile f = parse_system(text);
        const Sgtrs& s = f.system.base;
        out << "system: " << s.controls().size() << " controls, " << s.alphabet().size() << " symbols, "
            << s.rules().size() << " rules, lifespan " << f.system.lifespan
            << (is_weakly_extended(s) ? ", weakly extended" : "") << "\n";
      }
      return run.finish(Yes, out.str());
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return InputError;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}
