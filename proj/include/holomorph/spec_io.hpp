#ifndef HOLOMORPH_SPEC_IO_HPP_
#define HOLOMORPH_SPEC_IO_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "holomorph/automorphism.hpp"
#include "holomorph/base.hpp"
#include "holomorph/group_table.hpp"
#include "holomorph/recipe.hpp"
#include "holomorph/sdp.hpp"

namespace holomorph {

using json = nlohmann::json;

// On-disk description of a semidirect product:
// {
//   "A": {"type": "abelian", "cyclic_factors": [7]}
//        | {"type": "table", "path": "a.csv"},
//   "factors": [
//     {"p": 3, "n": 2, "m": 1, "u": 1,
//      "psi": {"type": "power", "exponent": 2}
//             | {"type": "map", "images": [0, 2, 1, ...]}}
//   ]
// }
// Table paths are resolved relative to the spec file's directory.
struct PsiSpec {
  enum class Kind { kPower, kMap } kind = Kind::kPower;
  u64 exponent = 1;
  std::vector<elem_t> images;
};

struct FactorSpec {
  u64 p = 0, n = 0, m = 0, u = 1;
  PsiSpec psi;
};

struct GroupSpec {
  bool a_is_table = false;
  std::vector<u64> a_cyclic;
  std::string a_table_path;
  std::vector<FactorSpec> factors;
};

namespace spec_detail {

inline u64 require_uint(const json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key))
    throw InputError("spec: missing field '" + where + "." + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_unsigned())
    throw InputError("spec: field '" + where + "." + key + "' must be a non-negative integer");
  return v.get<u64>();
}

}  // namespace spec_detail

inline GroupSpec group_spec_from_json(const json& j, const std::string& base_dir = ".") {
  using spec_detail::require_uint;
  GroupSpec spec;
  if (!j.is_object() || !j.contains("A") || !j.contains("factors"))
    throw InputError("spec: expected an object with fields 'A' and 'factors'");
  const json& a = j.at("A");
  std::string a_type = a.value("type", "");
  if (a_type == "abelian") {
    if (!a.contains("cyclic_factors") || !a.at("cyclic_factors").is_array())
      throw InputError("spec: 'A.cyclic_factors' must be an array of integers");
    for (const json& f : a.at("cyclic_factors")) {
      if (!f.is_number_unsigned())
        throw InputError("spec: 'A.cyclic_factors' entries must be positive integers");
      spec.a_cyclic.push_back(f.get<u64>());
    }
  } else if (a_type == "table") {
    if (!a.contains("path") || !a.at("path").is_string())
      throw InputError("spec: 'A.path' must be a string");
    spec.a_is_table = true;
    std::filesystem::path p = a.at("path").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    spec.a_table_path = p.string();
  } else {
    throw InputError("spec: 'A.type' must be 'abelian' or 'table'");
  }
  if (!j.at("factors").is_array())
    throw InputError("spec: 'factors' must be an array");
  int idx = 0;
  for (const json& f : j.at("factors")) {
    std::string where = "factors[" + std::to_string(idx++) + "]";
    FactorSpec fs;
    fs.p = require_uint(f, where, "p");
    fs.n = require_uint(f, where, "n");
    fs.m = require_uint(f, where, "m");
    fs.u = f.contains("u") ? require_uint(f, where, "u") : 1;
    if (!f.contains("psi") || !f.at("psi").is_object())
      throw InputError("spec: missing object '" + where + ".psi'");
    const json& psi = f.at("psi");
    std::string psi_type = psi.value("type", "");
    if (psi_type == "power") {
      fs.psi.kind = PsiSpec::Kind::kPower;
      fs.psi.exponent = require_uint(psi, where + ".psi", "exponent");
    } else if (psi_type == "map") {
      if (!psi.contains("images") || !psi.at("images").is_array())
        throw InputError("spec: '" + where + ".psi.images' must be an array");
      fs.psi.kind = PsiSpec::Kind::kMap;
      for (const json& v : psi.at("images")) {
        if (!v.is_number_unsigned())
          throw InputError("spec: '" + where + ".psi.images' entries must be indices");
        fs.psi.images.push_back(static_cast<elem_t>(v.get<u64>()));
      }
    } else {
      throw InputError("spec: '" + where + ".psi.type' must be 'power' or 'map'");
    }
    spec.factors.push_back(std::move(fs));
  }
  return spec;
}

inline GroupSpec load_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("spec parse error in " + path + ": " + e.what());
  }
  return group_spec_from_json(j, std::filesystem::path(path).parent_path().string());
}

inline json group_spec_to_json(const GroupSpec& spec) {
  json j;
  if (spec.a_is_table) {
    j["A"] = {{"type", "table"}, {"path", spec.a_table_path}};
  } else {
    j["A"] = {{"type", "abelian"}, {"cyclic_factors", spec.a_cyclic}};
  }
  j["factors"] = json::array();
  for (const auto& f : spec.factors) {
    json jf{{"p", f.p}, {"n", f.n}, {"m", f.m}, {"u", f.u}};
    if (f.psi.kind == PsiSpec::Kind::kPower) {
      jf["psi"] = {{"type", "power"}, {"exponent", f.psi.exponent}};
    } else {
      jf["psi"] = {{"type", "map"}, {"images", f.psi.images}};
    }
    j["factors"].push_back(std::move(jf));
  }
  return j;
}

inline GroupSpec recipe_to_spec(const RecipeSpec& recipe) {
  GroupSpec spec;
  spec.a_cyclic = recipe.a_cyclic;
  for (const auto& f : recipe.factors) {
    FactorSpec fs;
    fs.p = f.p;
    fs.n = f.n;
    fs.m = f.m;
    fs.u = 1;
    fs.psi.kind = PsiSpec::Kind::kPower;
    fs.psi.exponent = f.ell;
    spec.factors.push_back(fs);
  }
  return spec;
}

inline SdpGroup build_from_spec(const GroupSpec& spec, int cap = GroupTable::kDefaultCap) {
  GroupTable a = spec.a_is_table ? import_table(spec.a_table_path)
                                 : build_abelian(spec.a_cyclic, cap);
  std::vector<SdpFactorSpec> factors;
  for (const auto& f : spec.factors) {
    SdpFactorSpec fs;
    fs.p = f.p;
    fs.n = f.n;
    fs.m = f.m;
    fs.u = f.u;
    if (f.psi.kind == PsiSpec::Kind::kPower) {
      fs.psi = power_map_aut(a, f.psi.exponent);
      fs.psi_is_power = true;
      fs.psi_exponent = f.psi.exponent;
    } else {
      if (static_cast<int>(f.psi.images.size()) != a.size())
        throw InputError("spec: psi.images has " + std::to_string(f.psi.images.size()) +
                         " entries but |A| = " + std::to_string(a.size()));
      fs.psi = Automorphism{f.psi.images};
    }
    factors.push_back(std::move(fs));
  }
  return build_sdp(std::move(a), std::move(factors));
}

}  // namespace holomorph

#endif  // HOLOMORPH_SPEC_IO_HPP_
