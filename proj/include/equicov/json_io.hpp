// JSON wire formats for groups, complexes, actions, and generating vectors,
// plus the small file utilities the CLI needs. All emission goes through
// ordered JSON objects so identical inputs produce byte-identical reports.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "equicov/complex.hpp"
#include "equicov/errors.hpp"
#include "equicov/gcomplex.hpp"
#include "equicov/group.hpp"
#include "equicov/surface.hpp"

namespace equicov {

using Json = nlohmann::ordered_json;

// FNV-1a, 64-bit, over raw bytes; rendered as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xf);
  return os.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorKind::ParseError, "cannot read file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail(ErrorKind::ParseError, "invalid JSON in " + what);
  }
  return j;
}

namespace detail {

inline const Json& expect_field(const Json& j, const std::string& key,
                                const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorKind::ParseError, what + " is missing required field \"" + key + "\"");
  }
  return j.at(key);
}

inline long long expect_integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) {
    fail(ErrorKind::ParseError, what + " must be an integer");
  }
  return j.get<long long>();
}

inline std::vector<int> expect_int_array(const Json& j, const std::string& what) {
  if (!j.is_array()) {
    fail(ErrorKind::ParseError, what + " must be an array of integers");
  }
  std::vector<int> out;
  for (const Json& v : j) {
    out.push_back(static_cast<int>(expect_integer(v, "entry of " + what)));
  }
  return out;
}

}  // namespace detail

// Group cap override for command-line runs; unset means the library default.
inline std::size_t group_cap_from_env() {
  const char* raw = std::getenv("EQUICOV_GROUP_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultGroupCap;
  char* end = nullptr;
  const long long value = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1) {
    fail(ErrorKind::ParseError, "EQUICOV_GROUP_CAP must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

// {"degree": d, "generators": [[images]...], "name": optional}
inline PermGroup group_from_json(const Json& j, std::size_t cap = kDefaultGroupCap) {
  const int degree =
      static_cast<int>(detail::expect_integer(detail::expect_field(j, "degree", "group"),
                                              "group degree"));
  const Json& gens = detail::expect_field(j, "generators", "group");
  if (!gens.is_array()) {
    fail(ErrorKind::ParseError, "group generators must be an array");
  }
  std::vector<Perm> generators;
  for (const Json& g : gens) {
    try {
      generators.push_back(Perm::from_images(detail::expect_int_array(g, "generator")));
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, std::string("bad generator: ") + e.what());
    }
  }
  std::string name;
  if (j.contains("name") && j.at("name").is_string()) {
    name = j.at("name").get<std::string>();
  }
  return PermGroup::from_generators(degree, std::move(generators), name, cap);
}

inline Json group_to_json(const PermGroup& g) {
  Json j;
  j["degree"] = g.degree();
  if (!g.name().empty()) j["name"] = g.name();
  Json gens = Json::array();
  for (const Perm& p : g.generators()) gens.push_back(p.images());
  j["generators"] = std::move(gens);
  j["order"] = g.order();
  return j;
}

// {"num_vertices": n, "maximal_simplices": [[...]...]}
inline SComplex complex_from_json(const Json& j) {
  const int n = static_cast<int>(detail::expect_integer(
      detail::expect_field(j, "num_vertices", "complex"), "num_vertices"));
  const Json& maximal = detail::expect_field(j, "maximal_simplices", "complex");
  if (!maximal.is_array()) {
    fail(ErrorKind::ParseError, "maximal_simplices must be an array");
  }
  std::vector<Simplex> simplices;
  for (const Json& s : maximal) {
    simplices.push_back(detail::expect_int_array(s, "simplex"));
  }
  return SComplex::from_maximal(n, simplices);
}

inline Json complex_to_json(const SComplex& k) {
  Json j;
  j["num_vertices"] = k.num_vertices();
  Json maximal = Json::array();
  for (const Simplex& s : maximal_simplices(k)) maximal.push_back(s);
  j["maximal_simplices"] = std::move(maximal);
  return j;
}

// {"complex": object-or-path, "group": object-or-path,
//  "generator_vertex_images": [[...]...]}; paths resolve relative to the
// directory of the action file itself.
inline GComplex action_from_json(const Json& j, const std::string& base_dir,
                                 std::size_t cap = kDefaultGroupCap) {
  auto resolve = [&](const Json& field, const std::string& what) -> Json {
    if (field.is_string()) {
      std::filesystem::path p(field.get<std::string>());
      if (p.is_relative() && !base_dir.empty()) {
        p = std::filesystem::path(base_dir) / p;
      }
      return parse_json_text(read_text_file(p.string()), what + " file " + p.string());
    }
    if (field.is_object()) return field;
    fail(ErrorKind::ParseError, what + " must be an object or a path string");
  };
  const Json complex_json = resolve(detail::expect_field(j, "complex", "action"), "complex");
  const Json group_json = resolve(detail::expect_field(j, "group", "action"), "group");
  SComplex complex = complex_from_json(complex_json);
  PermGroup group = group_from_json(group_json, cap);
  const Json& images = detail::expect_field(j, "generator_vertex_images", "action");
  if (!images.is_array()) {
    fail(ErrorKind::ParseError, "generator_vertex_images must be an array");
  }
  std::vector<Perm> generator_images;
  for (const Json& im : images) {
    try {
      generator_images.push_back(
          Perm::from_images(detail::expect_int_array(im, "vertex image")));
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, std::string("bad vertex image: ") + e.what());
    }
  }
  return GComplex::build_action(std::move(complex), std::move(group), generator_images);
}

inline Json action_to_json(const GComplex& x) {
  Json j;
  j["complex"] = complex_to_json(x.complex());
  j["group"] = group_to_json(x.group());
  Json images = Json::array();
  for (const Perm& gen : x.group().generators()) {
    const int idx = x.group().element_index(gen);
    images.push_back(x.action_of(idx).images());
  }
  j["generator_vertex_images"] = std::move(images);
  return j;
}

// {"handles": [[images]...], "branch_elements": [[images]...]}
inline GeneratingVector generating_vector_from_json(const Json& j) {
  GeneratingVector gv;
  auto load = [&](const char* key, std::vector<Perm>* into) {
    if (!j.contains(key)) return;
    const Json& arr = j.at(key);
    if (!arr.is_array()) {
      fail(ErrorKind::ParseError, std::string(key) + " must be an array");
    }
    for (const Json& p : arr) {
      try {
        into->push_back(Perm::from_images(detail::expect_int_array(p, key)));
      } catch (const Error& e) {
        fail(ErrorKind::ParseError, std::string("bad permutation in ") + key + ": " + e.what());
      }
    }
  };
  load("handles", &gv.handles);
  load("branch_elements", &gv.branch_elements);
  return gv;
}

inline Json generating_vector_to_json(const GeneratingVector& gv) {
  Json j;
  Json handles = Json::array();
  Json cycles = Json::array();
  for (const Perm& p : gv.handles) {
    handles.push_back(p.images());
    cycles.push_back(p.to_cycle_string());
  }
  j["handles"] = std::move(handles);
  Json branches = Json::array();
  Json branch_cycles = Json::array();
  for (const Perm& p : gv.branch_elements) {
    branches.push_back(p.images());
    branch_cycles.push_back(p.to_cycle_string());
  }
  j["branch_elements"] = std::move(branches);
  j["handle_cycles"] = std::move(cycles);
  j["branch_cycles"] = std::move(branch_cycles);
  return j;
}

}  // namespace equicov
