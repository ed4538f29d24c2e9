// Command-line front door. Everything routes through run_cli so tests can
// drive the binary in-process; the installed executable is a thin argv
// wrapper around it. Reports are ordered JSON and byte-identical across
// runs for identical inputs.
#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "equicov/bounds.hpp"
#include "equicov/complex.hpp"
#include "equicov/errors.hpp"
#include "equicov/gcomplex.hpp"
#include "equicov/graph_ct.hpp"
#include "equicov/group.hpp"
#include "equicov/json_io.hpp"
#include "equicov/surface.hpp"

namespace equicov {

namespace cli_detail {

struct ParsedArgs {
  std::string command;
  std::vector<std::string> positional;
  std::map<std::string, std::string> values;
  std::set<std::string> switches;
};

inline ParsedArgs parse_args(const std::vector<std::string>& args,
                             const std::set<std::string>& valued,
                             const std::set<std::string>& allowed_switches) {
  ParsedArgs out;
  out.command = args.front();
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token.rfind("--", 0) != 0) {
      out.positional.push_back(token);
      continue;
    }
    std::string name = token;
    std::string inline_value;
    bool has_inline = false;
    const std::size_t eq = token.find('=');
    if (eq != std::string::npos) {
      name = token.substr(0, eq);
      inline_value = token.substr(eq + 1);
      has_inline = true;
    }
    if (valued.count(name)) {
      std::string value;
      if (has_inline) {
        value = inline_value;
      } else {
        if (i + 1 >= args.size()) {
          fail(ErrorKind::ParseError, "flag " + name + " requires a value");
        }
        value = args[++i];
      }
      if (!out.values.emplace(name, value).second) {
        fail(ErrorKind::ParseError, "flag " + name + " given twice");
      }
    } else if (allowed_switches.count(name)) {
      if (has_inline) {
        fail(ErrorKind::ParseError, "flag " + name + " takes no value");
      }
      out.switches.insert(name);
    } else {
      fail(ErrorKind::ParseError, "unknown flag " + name);
    }
  }
  return out;
}

inline long long parse_integer(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, what + " must be an integer, got \"" + s + "\"");
  }
  if (used != s.size()) {
    fail(ErrorKind::ParseError, what + " must be an integer, got \"" + s + "\"");
  }
  return value;
}

inline std::vector<long long> parse_integer_list(const std::string& s,
                                                 const std::string& what) {
  std::vector<long long> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string piece =
        s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_integer(piece, "entry of " + what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (long long v : parse_integer_list(s, what)) out.push_back(static_cast<int>(v));
  return out;
}

inline const std::string& require_value(const ParsedArgs& a, const std::string& name) {
  const auto it = a.values.find(name);
  if (it == a.values.end()) {
    fail(ErrorKind::ParseError, a.command + " requires " + name);
  }
  return it->second;
}

inline const std::string& require_positional(const ParsedArgs& a, const char* what) {
  if (a.positional.size() != 1) {
    fail(ErrorKind::ParseError,
         a.command + " expects exactly one " + what + " argument");
  }
  return a.positional.front();
}

struct LoadedJson {
  Json json;
  std::string path;
  std::string digest;
  std::string directory;
};

inline LoadedJson load_json_file(const std::string& path) {
  LoadedJson out;
  out.path = path;
  const std::string text = read_text_file(path);
  out.digest = fnv1a_hex(text);
  out.json = parse_json_text(text, path);
  out.directory = std::filesystem::path(path).parent_path().string();
  return out;
}

inline void note_file(Json* inputs, const std::string& role, const LoadedJson& file) {
  (*inputs)["files"][role] = Json{{"path", file.path}, {"fnv1a", file.digest}};
}

inline void note_flags(Json* inputs, const ParsedArgs& a) {
  Json flags = Json::object();
  for (const auto& [k, v] : a.values) {
    if (k != "--output") flags[k] = v;
  }
  for (const std::string& s : a.switches) flags[s] = true;
  (*inputs)["flags"] = std::move(flags);
}

inline void emit(const Json& report, const ParsedArgs& a, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  const auto it = a.values.find("--output");
  if (it != a.values.end()) {
    std::ofstream f(it->second, std::ios::binary);
    if (!f) {
      fail(ErrorKind::ParseError, "cannot write output file: " + it->second);
    }
    f << text;
  }
}

inline Json rational_fields(const Rational& value, const std::string& name) {
  Json j = Json::object();
  if (value.denominator() == 1) j[name] = value.numerator();
  j[name + "_numerator"] = value.numerator();
  j[name + "_denominator"] = value.denominator();
  return j;
}

inline Json regularity_to_json(const RegularityReport& reg, const GComplex& x) {
  Json j;
  j["r1"] = reg.r1;
  j["r2"] = reg.r2;
  j["r3"] = reg.r3;
  j["regular"] = reg.regular();
  j["strictly_regular"] = reg.strictly_regular();
  if (reg.r1_witness) {
    j["r1_witness"] = Json{
        {"vertex", reg.r1_witness->vertex},
        {"element_index", reg.r1_witness->element},
        {"element", x.group().element(reg.r1_witness->element).to_cycle_string()},
        {"simplex", reg.r1_witness->simplex}};
  }
  if (reg.r2_witness) {
    j["r2_witness"] = Json{{"source", reg.r2_witness->source},
                           {"images", reg.r2_witness->images},
                           {"target", reg.r2_witness->target}};
  }
  if (reg.r3_witness) {
    j["r3_witness"] = Json{{"simplex", reg.r3_witness->simplex},
                           {"vertex_a", reg.r3_witness->vertex_a},
                           {"vertex_b", reg.r3_witness->vertex_b}};
  }
  return j;
}

inline Json bound_report_to_json(const BoundReport& r) {
  r.check();
  Json j;
  j["quantity"] = r.quantity;
  j["lower"] = r.lower;
  if (r.upper) j["upper"] = *r.upper;
  j["method"] = r.method;
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  j["notes"] = r.notes;
  return j;
}

inline BranchingData branching_from_flags(const ParsedArgs& a, long long quotient_genus) {
  BranchingData d;
  d.quotient_genus = quotient_genus;
  d.group_order = parse_integer(require_value(a, "--order"), "--order");
  const auto it = a.values.find("--periods");
  if (it != a.values.end()) d.periods = parse_integer_list(it->second, "--periods");
  validate_branching_data(d);
  return d;
}

inline const char* kUsage =
    "usage: equicov <command> [flags]\n"
    "\n"
    "commands:\n"
    "  check-regular <action.json>        regularity conditions and witnesses\n"
    "  regularize <action.json>           subdivide until strictly regular\n"
    "  quotient <action.json>             orbit complex and vertex orbit map\n"
    "  fvector <action.json|complex.json> face counts, equivariant when a group acts\n"
    "  ct-graph <action.json>             exact equivariant covering type of a graph\n"
    "  surface-bounds --g-prime N --order M [--periods a,b,...]\n"
    "  gv-search --group G.json --g-prime N [--periods a,b,...] [--budget N]\n"
    "  lift <complex.json> --group G.json [--branch-vertices v,...]\n"
    "       [--periods a,... | --gv gv.json] [--expand] [--budget N]\n"
    "  jr --genus N [--orientable|--non-orientable]\n"
    "  rh (--g-prime N | --total-genus N) --order M [--periods a,b,...]\n"
    "  bound <genus|arithmetic|projective|sphere-zpk|cohom-sphere|join|relative> ...\n"
    "\n"
    "common flags: --output <path> writes the report to a file as well.\n"
    "environment: EQUICOV_GROUP_CAP caps generated group sizes.\n";

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  using namespace cli_detail;
  const std::string command = args.empty() ? "" : args.front();
  try {
    if (args.empty()) {
      out << kUsage;
      return 2;
    }
    if (command == "help" || command == "--help") {
      out << kUsage;
      return 0;
    }
    const std::size_t cap = group_cap_from_env();
    Json report;
    report["schema"] = 1;
    report["command"] = command;
    Json inputs = Json::object();
    Json result = Json::object();
    Json warnings = Json::array();

    if (command == "check-regular" || command == "regularize" ||
        command == "quotient" || command == "ct-graph") {
      const ParsedArgs a = parse_args(args, {"--output"}, {});
      const LoadedJson file = load_json_file(require_positional(a, "action file"));
      note_file(&inputs, "action", file);
      note_flags(&inputs, a);
      GComplex x = action_from_json(file.json, file.directory, cap);
      if (command == "check-regular") {
        result = regularity_to_json(check_regularity(x), x);
      } else if (command == "regularize") {
        const RegularityReport before = check_regularity(x);
        const GComplex fixed = regularize(x);
        const int subdivisions = before.strictly_regular() ? 0 : (before.r1 ? 1 : 2);
        result["subdivisions"] = subdivisions;
        result["before"] = regularity_to_json(before, x);
        result["after"] = regularity_to_json(check_regularity(fixed), fixed);
        result["action"] = action_to_json(fixed);
      } else if (command == "quotient") {
        const QuotientResult q = quotient(x);
        result["complex"] = complex_to_json(q.complex);
        result["vertex_to_orbit"] = q.vertex_to_orbit;
        result["orbit_to_vertices"] = q.orbit_to_vertices;
      } else {
        const GraphCtReport ct = graph_covering_type(x);
        result["total"] = ct.total;
        Json strata = Json::array();
        for (const StratumReport& s : ct.strata) {
          Json stratum;
          stratum["stabilizer_order"] = s.orbit_type.subgroup_order();
          Json elements = Json::array();
          for (int e : s.orbit_type.representative) {
            elements.push_back(x.group().element(e).to_cycle_string());
          }
          stratum["stabilizer"] = std::move(elements);
          stratum["stratum_vertices"] =
              static_cast<long long>(s.stratum_subgraph.simplices(0).size());
          stratum["quotient_vertices"] = s.quotient_vertices;
          stratum["quotient_edges"] = s.quotient_edges;
          stratum["quotient_components"] = s.quotient_components;
          stratum["loops"] = s.quotient_loops;
          stratum["zero_loops"] = s.zero_loops;
          stratum["contribution"] = s.contribution;
          strata.push_back(std::move(stratum));
        }
        result["strata"] = std::move(strata);
      }
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    if (command == "fvector") {
      const ParsedArgs a = parse_args(args, {"--output"}, {});
      const LoadedJson file = load_json_file(require_positional(a, "input file"));
      note_flags(&inputs, a);
      if (file.json.is_object() && file.json.contains("generator_vertex_images")) {
        note_file(&inputs, "action", file);
        GComplex x = action_from_json(file.json, file.directory, cap);
        result["f_vector"] = x.complex().f_vector().counts;
        result["euler_characteristic"] = x.complex().euler_characteristic();
        const EquivariantFVector ef = equivariant_f_vector(x);
        result["equivariant"] = Json{{"orbit_counts", ef.orbit_counts},
                                     {"stabilizer_orders", ef.stabilizer_orders}};
      } else {
        note_file(&inputs, "complex", file);
        const SComplex k = complex_from_json(file.json);
        result["f_vector"] = k.f_vector().counts;
        result["euler_characteristic"] = k.euler_characteristic();
      }
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    if (command == "surface-bounds") {
      const ParsedArgs a =
          parse_args(args, {"--g-prime", "--order", "--periods", "--output"}, {});
      note_flags(&inputs, a);
      const BranchingData d = branching_from_flags(
          a, parse_integer(require_value(a, "--g-prime"), "--g-prime"));
      const SurfaceBoundsReport r = surface_orbit_bounds(d);
      result["total_genus"] = r.total_genus;
      result["quotient_vertex_floor"] = r.quotient_vertex_floor;
      result["vertex_orbits_min"] = r.vertex_orbits_min;
      result["vertex_orbits_max"] = r.vertex_orbits_max;
      result["covering_type_min"] = r.covering_type_min;
      result["covering_type_max"] = r.covering_type_max;
      result["covering_min_from_genus_two"] = r.covering_min_from_genus_two;
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    if (command == "gv-search") {
      const ParsedArgs a = parse_args(
          args, {"--group", "--g-prime", "--periods", "--budget", "--output"}, {});
      const LoadedJson gfile = load_json_file(require_value(a, "--group"));
      note_file(&inputs, "group", gfile);
      note_flags(&inputs, a);
      const PermGroup group = group_from_json(gfile.json, cap);
      const long long g_prime = parse_integer(require_value(a, "--g-prime"), "--g-prime");
      std::vector<long long> periods;
      if (a.values.count("--periods")) {
        periods = parse_integer_list(a.values.at("--periods"), "--periods");
      }
      const long long budget = a.values.count("--budget")
                                   ? parse_integer(a.values.at("--budget"), "--budget")
                                   : kDefaultSearchBudget;
      const auto gv = find_generating_vector(group, g_prime, periods, budget);
      result["found"] = gv.has_value();
      if (gv) result["generating_vector"] = generating_vector_to_json(*gv);
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    if (command == "lift") {
      const ParsedArgs a = parse_args(args,
                                      {"--group", "--branch-vertices", "--periods",
                                       "--gv", "--budget", "--output"},
                                      {"--expand"});
      const LoadedJson cfile = load_json_file(require_positional(a, "complex file"));
      note_file(&inputs, "complex", cfile);
      const LoadedJson gfile = load_json_file(require_value(a, "--group"));
      note_file(&inputs, "group", gfile);
      note_flags(&inputs, a);
      SComplex base = complex_from_json(cfile.json);
      const PermGroup group = group_from_json(gfile.json, cap);
      std::vector<int> branch;
      if (a.values.count("--branch-vertices")) {
        branch = parse_int_list(a.values.at("--branch-vertices"), "--branch-vertices");
      } else if (cfile.json.is_object() && cfile.json.contains("branch_vertices")) {
        branch = detail::expect_int_array(cfile.json["branch_vertices"],
                                          "branch_vertices");
      }
      const long long budget = a.values.count("--budget")
                                   ? parse_integer(a.values.at("--budget"), "--budget")
                                   : kDefaultLiftBudget;
      bool expanded = false;
      std::vector<int> added;
      if (a.switches.count("--expand")) {
        ExpandResult er = expand_for_lift(base, branch);
        expanded = !er.added_vertices.empty();
        added = er.added_vertices;
        base = std::move(er.complex);
        branch = std::move(er.branch_vertices);
      }
      GeneratingVector gv;
      if (a.values.count("--gv")) {
        const LoadedJson vfile = load_json_file(a.values.at("--gv"));
        note_file(&inputs, "gv", vfile);
        gv = generating_vector_from_json(vfile.json);
      } else {
        const auto info = is_closed_surface(base);
        if (!info || !info->orientable) {
          fail(ErrorKind::NotASurface,
               "lifting requires a closed orientable surface");
        }
        std::vector<long long> periods;
        if (a.values.count("--periods")) {
          periods = parse_integer_list(a.values.at("--periods"), "--periods");
        }
        const auto found = find_generating_vector(group, info->genus, periods, budget);
        if (!found) {
          fail(ErrorKind::InvalidGeneratingVector,
               "no generating vector exists for the requested branching data");
        }
        gv = *found;
      }
      const LiftResult lift = lift_triangulation(base, branch, group, gv, budget);
      result["expanded"] = expanded;
      result["added_vertices"] = added;
      result["branch_vertices"] = branch;
      result["generating_vector"] = generating_vector_to_json(gv);
      result["total_genus"] =
          is_closed_surface(lift.total.complex())->genus;
      result["f_vector"] = lift.total.complex().f_vector().counts;
      result["vertex_orbit_counts"] = equivariant_f_vector(lift.total).orbit_counts;
      result["projection"] = lift.projection;
      result["branch_fibers"] = lift.branch_fibers;
      result["action"] = action_to_json(lift.total);
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    if (command == "jr") {
      const ParsedArgs a =
          parse_args(args, {"--genus", "--output"}, {"--orientable", "--non-orientable"});
      note_flags(&inputs, a);
      if (a.switches.count("--orientable") && a.switches.count("--non-orientable")) {
        fail(ErrorKind::ParseError, "--orientable and --non-orientable conflict");
      }
      const bool orientable = !a.switches.count("--non-orientable");
      const long long genus = parse_integer(require_value(a, "--genus"), "--genus");
      result["n"] = jungerman_ringel(genus, orientable);
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    if (command == "rh") {
      const ParsedArgs a = parse_args(
          args, {"--g-prime", "--total-genus", "--order", "--periods", "--output"}, {});
      note_flags(&inputs, a);
      const bool forward = a.values.count("--g-prime") > 0;
      const bool inverse = a.values.count("--total-genus") > 0;
      if (forward == inverse) {
        fail(ErrorKind::ParseError, "give exactly one of --g-prime and --total-genus");
      }
      if (forward) {
        const BranchingData d = branching_from_flags(
            a, parse_integer(a.values.at("--g-prime"), "--g-prime"));
        result = rational_fields(rh_genus(d), "g");
      } else {
        const long long total = parse_integer(a.values.at("--total-genus"), "--total-genus");
        const long long order = parse_integer(require_value(a, "--order"), "--order");
        std::vector<long long> periods;
        if (a.values.count("--periods")) {
          periods = parse_integer_list(a.values.at("--periods"), "--periods");
        }
        result = rational_fields(rh_quotient_genus(total, order, periods), "g_prime");
      }
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    if (command == "bound") {
      const ParsedArgs a = parse_args(args,
                                      {"--gamma", "--degrees", "--n", "--d", "--m",
                                       "--p", "--r", "--parts", "--fixed",
                                       "--relative", "--output"},
                                      {});
      if (a.positional.size() != 1) {
        fail(ErrorKind::ParseError, "bound expects exactly one kind argument");
      }
      const std::string& kind = a.positional.front();
      note_flags(&inputs, a);
      inputs["kind"] = kind;
      BoundReport r;
      if (kind == "genus") {
        const long long gamma = parse_integer(require_value(a, "--gamma"), "--gamma");
        r.quantity = "ct_G";
        r.lower = genus_lower_bound(gamma);
        r.method = "linear-order-genus";
        r.inputs["gamma"] = std::to_string(gamma);
      } else if (kind == "arithmetic") {
        std::vector<long long> degrees =
            parse_integer_list(require_value(a, "--degrees"), "--degrees");
        r.quantity = "ct_G";
        r.lower = arithmetic_bound(degrees);
        r.method = "degree-sum";
        std::sort(degrees.begin(), degrees.end());
        std::string echo;
        for (std::size_t i = 0; i < degrees.size(); ++i) {
          if (i) echo += ",";
          echo += std::to_string(degrees[i]);
        }
        r.inputs["degrees"] = echo;
        r.notes.push_back("degrees sorted ascending before summation");
      } else if (kind == "projective") {
        const long long n = parse_integer(require_value(a, "--n"), "--n");
        r.quantity = "ct_G";
        r.lower = projective_bound(n);
        r.method = "projective-dimension";
        r.inputs["n"] = std::to_string(n);
        r.notes.push_back("equals (d+2)^2/4 for the geometric dimension d = 2n");
      } else if (kind == "sphere-zpk") {
        const long long d = parse_integer(require_value(a, "--d"), "--d");
        const long long m = parse_integer(require_value(a, "--m"), "--m");
        const long long n = parse_integer(require_value(a, "--n"), "--n");
        r.quantity = "ct_G";
        r.lower = sphere_zpk_bound(d, m, n);
        r.method = "sphere-isotropy-window";
        r.inputs["d"] = std::to_string(d);
        r.inputs["m"] = std::to_string(m);
        r.inputs["n"] = std::to_string(n);
      } else if (kind == "cohom-sphere") {
        const long long n = parse_integer(require_value(a, "--n"), "--n");
        const long long p = parse_integer(require_value(a, "--p"), "--p");
        const long long fixed_dim =
            a.values.count("--r") ? parse_integer(a.values.at("--r"), "--r") : -1;
        r = cohomology_sphere_bound(n, p, fixed_dim);
      } else if (kind == "join") {
        const std::vector<long long> parts =
            parse_integer_list(require_value(a, "--parts"), "--parts");
        r.quantity = "ct_G";
        r.lower = cyclic_join_additivity(parts);
        r.upper = r.lower;
        r.method = "join-additivity";
        std::string echo;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i) echo += ",";
          echo += std::to_string(parts[i]);
        }
        r.inputs["parts"] = echo;
        r.notes.push_back("covering type is exactly additive over the join factors");
      } else if (kind == "relative") {
        const long long fixed = parse_integer(require_value(a, "--fixed"), "--fixed");
        const long long rel = parse_integer(require_value(a, "--relative"), "--relative");
        r.quantity = "ct_G";
        r.lower = relative_sct_decomposition(fixed, rel);
        r.method = "relative-decomposition";
        r.inputs["fixed"] = std::to_string(fixed);
        r.inputs["relative"] = std::to_string(rel);
        r.notes.push_back("equality is conjectural and not asserted");
      } else {
        fail(ErrorKind::UnknownCommand, "unknown bound kind: " + kind);
      }
      result = bound_report_to_json(r);
      report["inputs"] = std::move(inputs);
      report["result"] = std::move(result);
      report["warnings"] = std::move(warnings);
      emit(report, a, out);
      return 0;
    }

    fail(ErrorKind::UnknownCommand, "unknown command: " + command);
  } catch (const Error& e) {
    Json err;
    err["schema"] = 1;
    err["command"] = command;
    err["error"] = Json{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    out << err.dump(2) << "\n";
    return (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownCommand)
               ? 2
               : 1;
  } catch (const std::exception& e) {
    Json err;
    err["schema"] = 1;
    err["command"] = command;
    err["error"] = Json{{"kind", "Internal"}, {"message", e.what()}};
    out << err.dump(2) << "\n";
    return 1;
  }
}

}  // namespace equicov
