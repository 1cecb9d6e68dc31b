// Python bindings: text formats in, verdicts out.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "senescent/catalog.hpp"
#include "senescent/encodings.hpp"
#include "senescent/errors.hpp"
#include "senescent/formats.hpp"
#include "senescent/resetpn.hpp"
#include "senescent/senescent.hpp"
#include "senescent/summaries.hpp"

namespace py = pybind11;
using namespace senescent;

namespace {

SearchBounds bounds(std::size_t depth, std::size_t rhs_size, unsigned jobs, std::size_t max_states) {
  SearchBounds b;
  b.depth = depth;
  b.rhs_size = rhs_size;
  b.jobs = jobs;
  b.max_states = max_states;
  return b;
}

ControlId control_of(const SenescentSystem& system, const std::string& name) {
  const auto& cs = system.base.controls();
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i] == name) return static_cast<ControlId>(i);
  throw py::value_error("unknown control " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object exc = py::handle(parse_error.ptr())(e.what());
      exc.attr("line") = e.line();
      exc.attr("column") = e.column();
      PyErr_SetObject(parse_error.ptr(), exc.ptr());
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Tree>(m, "Tree")
      .def_static("parse", [](const std::string& text) { return parse_tree(text); })
      .def("__str__", &Tree::to_string)
      .def("__repr__", [](const Tree& t) { return "Tree('" + t.to_string() + "')"; })
      .def("__len__", &Tree::size)
      .def("__eq__", [](const Tree& a, const Tree& b) { return a == b; })
      .def("__hash__", &Tree::hash)
      .def_property_readonly("depth", &Tree::depth)
      .def("positions", [](const Tree& t) {
        std::vector<std::string> out;
        for (const auto& p : t.positions()) out.push_back(position_to_string(p));
        return out;
      });

  py::class_<WitnessStep>(m, "WitnessStep")
      .def_readonly("rule", &WitnessStep::rule)
      .def_property_readonly("position", [](const WitnessStep& s) { return position_to_string(s.position); })
      .def_readonly("rhs", &WitnessStep::rhs);

  py::class_<Verdict>(m, "Verdict")
      .def_property_readonly("reachable", &Verdict::reachable)
      .def_readonly("witness", &Verdict::witness)
      .def_readonly("saturated", &Verdict::saturated)
      .def_readonly("exhaustive", &Verdict::exhaustive)
      .def_readonly("states", &Verdict::states)
      .def_readonly("depth_reached", &Verdict::depth_reached)
      .def_readonly("rhs_bound", &Verdict::rhs_bound)
      .def_readonly("exhausted", &Verdict::exhausted)
      .def_property_readonly("witness_text", [](const Verdict& v) { return format_witness(v.witness); });

  py::class_<SenescentSystem>(m, "System")
      .def_readwrite("lifespan", &SenescentSystem::lifespan)
      .def_property_readonly("controls", [](const SenescentSystem& s) { return s.base.controls(); })
      .def_property_readonly("rule_count", [](const SenescentSystem& s) { return s.base.rules().size(); })
      .def("__str__", [](const SenescentSystem& s) { return print_system(s); });

  py::class_<SystemFile>(m, "SystemFile")
      .def_readonly("system", &SystemFile::system)
      .def_property_readonly("initial_control",
                             [](const SystemFile& f) -> std::optional<std::string> {
                               if (!f.initial) return std::nullopt;
                               return f.system.base.control_name(f.initial->control);
                             })
      .def_property_readonly("initial_tree",
                             [](const SystemFile& f) -> std::optional<Tree> {
                               if (!f.initial) return std::nullopt;
                               return f.initial->tree;
                             })
      .def_property_readonly("target", [](const SystemFile& f) -> std::optional<std::string> {
        if (!f.target) return std::nullopt;
        return f.system.base.control_name(*f.target);
      });

  m.def("parse_system", [](const std::string& text) { return parse_system(text); }, py::arg("text"));

  m.def(
      "reach",
      [](const SenescentSystem& system, const std::string& initial_control, const Tree& initial_tree,
         const std::string& target, std::size_t depth, std::size_t rhs_size, unsigned jobs, std::size_t max_states) {
        const Configuration init{control_of(system, initial_control), initial_tree};
        py::gil_scoped_release release;
        return reach_control(system, init, control_of(system, target), bounds(depth, rhs_size, jobs, max_states));
      },
      py::arg("system"), py::arg("initial_control"), py::arg("initial_tree"), py::arg("target"),
      py::arg("depth") = 10, py::arg("rhs_size") = 0, py::arg("jobs") = 1, py::arg("max_states") = 4'000'000);

  m.def(
      "reach_file",
      [](const SystemFile& file, std::size_t depth, std::size_t rhs_size, unsigned jobs, std::size_t max_states) {
        if (!file.initial || !file.target) throw py::value_error("system file has no init or target line");
        py::gil_scoped_release release;
        return reach_control(file.system, *file.initial, *file.target, bounds(depth, rhs_size, jobs, max_states));
      },
      py::arg("file"), py::arg("depth") = 10, py::arg("rhs_size") = 0, py::arg("jobs") = 1,
      py::arg("max_states") = 4'000'000);

  py::class_<ResetNet>(m, "ResetNet")
      .def_property_readonly("controls", &ResetNet::controls)
      .def_property_readonly("counters", &ResetNet::counters)
      .def_property_readonly("rule_count", [](const ResetNet& n) { return n.rules().size(); })
      .def("__str__", [](const ResetNet& n) { return print_net(n); });

  m.def("parse_net", [](const std::string& text) { return parse_net(text); }, py::arg("text"));

  m.def(
      "cover",
      [](const ResetNet& net, const std::string& initial, const std::string& target) {
        const auto r = pn_cover_backward(net, parse_net_config(net, initial), parse_net_config(net, target));
        py::dict out;
        out["covered"] = r.covered;
        out["witness"] = r.witness;
        std::vector<std::string> basis;
        for (const auto& c : r.basis) basis.push_back(format_config(net, c));
        out["basis"] = basis;
        return out;
      },
      py::arg("net"), py::arg("initial"), py::arg("target"));

  m.def(
      "cover_encoded",
      [](const ResetNet& net, const std::string& initial, const std::string& target, std::size_t depth,
         std::size_t rhs_size) {
        const auto enc = encode_cover(net, parse_net_config(net, initial), parse_net_config(net, target));
        py::gil_scoped_release release;
        return reach_control(enc.system, enc.initial, enc.target, bounds(depth, rhs_size, 1, 4'000'000));
      },
      py::arg("net"), py::arg("initial"), py::arg("target"), py::arg("depth") = 16, py::arg("rhs_size") = 3);

  m.def(
      "summary_route",
      [](const SenescentSystem& system, const std::string& initial_control, const Tree& initial_tree,
         const std::string& target, std::size_t depth) {
        PipelineBounds b;
        b.forward.depth = depth;
        const auto v = decide_control_reachability(system, control_of(system, initial_control), initial_tree,
                                                   control_of(system, target), b);
        py::dict out;
        out["reachable"] = v.reachable();
        out["forward"] = v.forward.reachable();
        out["summary"] = v.summary_yes;
        out["truncated"] = v.truncated;
        out["sequences"] = v.sequences;
        return out;
      },
      py::arg("system"), py::arg("initial_control"), py::arg("initial_tree"), py::arg("target"),
      py::arg("depth") = 8);

  auto cat = m.def_submodule("catalog");
  auto instance = [](const catalog::Instance& i) {
    SystemFile f;
    f.system = i.system;
    f.initial = i.initial;
    f.target = i.target;
    return f;
  };
  cat.def("interface_example", [instance](unsigned l) { return instance(catalog::interface_example(l)); },
          py::arg("lifespan"));
  cat.def("spawner", [instance](unsigned n, unsigned l) { return instance(catalog::spawner(n, l)); }, py::arg("n"),
          py::arg("lifespan"));
}
