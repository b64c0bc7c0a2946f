// Command-line front end: verify twist cosets against the predicted order,
// search for power-map recipes, run the brute-force T(G) oracle, check the
// power-map predictions on p-groups, and validate multiplication tables.
//
// Exit codes: 0 confirmed, 1 refuted or over a size cap, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holomorph/nilpotent.hpp"
#include "holomorph/oracle.hpp"
#include "holomorph/parallel.hpp"
#include "holomorph/pipeline.hpp"

namespace {

using holomorph::json;

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw holomorph::InputError("cannot write report to " + out_path);
    out << text;
  }
  std::cout << text;
}

std::vector<holomorph::u64> parse_factor_list(const std::string& text) {
  std::vector<holomorph::u64> factors;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw holomorph::InputError("--abelian expects comma-separated integers, got '" +
                                  item + "'");
    factors.push_back(std::stoull(item));
  }
  if (factors.empty()) throw holomorph::InputError("--abelian: empty factor list");
  return factors;
}

int cmd_verify(const std::string& spec_path, bool skip_aut, const std::string& out_path,
               int threads) {
  holomorph::GroupSpec spec = holomorph::load_group_spec(spec_path);
  holomorph::VerifyOptions opt;
  opt.skip_aut = skip_aut;
  opt.threads = threads;
  holomorph::VerifyResult res = holomorph::run_verify(spec, opt);
  emit(res.report, out_path);
  if (!res.confirmed) std::cerr << "refuted: " << res.failure << "\n";
  return res.exit_code();
}

int cmd_search(holomorph::u64 p, holomorph::u64 e, holomorph::u64 q_bound,
               const std::string& emit_dir) {
  auto specs = holomorph::recipe_search(p, e, q_bound);
  json report;
  report["predicted_coset_order"] = holomorph::pow_u64(p, e);
  report["specs"] = json::array();
  for (const auto& recipe : specs) {
    json entry;
    entry["q"] = recipe.a_cyclic[0];
    entry["spec"] = holomorph::group_spec_to_json(holomorph::recipe_to_spec(recipe));
    if (!emit_dir.empty()) {
      std::filesystem::create_directories(emit_dir);
      std::string name = "spec_p" + std::to_string(p) + "_e" + std::to_string(e) + "_q" +
                         std::to_string(recipe.a_cyclic[0]) + ".json";
      std::string path = (std::filesystem::path(emit_dir) / name).string();
      std::ofstream out(path);
      if (!out) throw holomorph::InputError("cannot write spec to " + path);
      out << entry["spec"].dump(2) << "\n";
      entry["file"] = path;
    }
    report["specs"].push_back(std::move(entry));
  }
  emit(report, "");
  return 0;
}

int cmd_oracle_nhol(const std::string& table_path, const std::string& abelian,
                    holomorph::u64 cap, int threads) {
  holomorph::GroupTable g = !table_path.empty()
                                ? holomorph::import_table(table_path)
                                : holomorph::build_abelian(parse_factor_list(abelian));
  holomorph::TStructure t = holomorph::brute_nhol(g, cap, threads);
  json report;
  report["group_order"] = g.size();
  report["aut_order"] = t.aut_order;
  report["t_order"] = t.t_order;
  report["element_orders"] = t.element_orders;
  report["elementary_abelian_2"] = t.elementary_abelian_2();
  report["pi_minus1_coset_order"] = t.pi_minus1_coset_order;
  emit(report, "");
  return 0;
}

int cmd_nilpotent(const std::string& group, const std::string& table_path, holomorph::u64 p,
                  holomorph::u64 ell, int threads) {
  holomorph::GroupTable g = !table_path.empty()
                                ? holomorph::import_table(table_path)
                                : (group == "heisenberg"
                                       ? holomorph::build_heisenberg(p)
                                       : throw holomorph::InputError(
                                             "--group must be 'heisenberg', or use --table"));
  holomorph::PowerMapCheck res = holomorph::power_map_check(g, p, ell, threads);
  json report;
  report["group_order"] = g.size();
  report["class"] = res.data.cls;
  report["center_order"] = res.data.center.size();
  report["r"] = res.data.r;
  report["t"] = res.data.t;
  report["ell"] = ell;
  report["applicable"] = res.applicable;
  report["in_nhol"] = res.in_nhol;
  report["coset_trivial"] = res.coset_trivial;
  report["predicted_in_nhol"] = res.predicted_in_nhol;
  report["predicted_trivial"] = res.predicted_trivial;
  report["agreement"] = res.agrees();
  emit(report, "");
  if (!res.applicable) {
    std::cerr << "hypotheses do not apply to this (G, p, ell)\n";
    return 1;
  }
  return res.agrees() ? 0 : 1;
}

int cmd_table_import(const std::string& table_path) {
  holomorph::GroupTable g = holomorph::import_table(table_path);
  json report;
  report["order"] = g.size();
  report["abelian"] = g.abelian();
  report["exponent"] = g.exponent();
  report["valid"] = true;
  emit(report, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holomorph: twist cosets in the multiple holomorph of a semidirect product"};
  app.require_subcommand(1);
  int threads = holomorph::default_thread_count();

  auto* verify = app.add_subcommand("verify", "verify a spec end to end");
  std::string spec_path, out_path;
  bool skip_aut = false;
  verify->add_option("--spec", spec_path, "spec JSON file")->required();
  verify->add_flag("--skip-aut", skip_aut,
                   "skip Aut(G) enumeration; condition (3) via the power-map criterion");
  verify->add_option("--out", out_path, "also write the report to this file");

  auto* search = app.add_subcommand("search", "search for power-map recipes");
  holomorph::u64 sp = 0, se = 0, sq = 0;
  std::string emit_dir;
  search->add_option("--p", sp, "odd prime")->required();
  search->add_option("--e", se, "target exponent: coset order p^e")->required();
  search->add_option("--q-bound", sq, "upper bound on the cyclic base prime q")->required();
  search->add_option("--emit", emit_dir, "write one spec JSON per hit into this directory");

  auto* oracle = app.add_subcommand("oracle", "brute-force ground truth at tiny scale");
  auto* oracle_nhol = oracle->add_subcommand("nhol", "compute T(G) by permutation scan");
  std::string o_table, o_abelian;
  holomorph::u64 o_cap = 40'000'000;
  oracle_nhol->add_option("--table", o_table, "multiplication table CSV");
  oracle_nhol->add_option("--abelian", o_abelian, "cyclic factors, e.g. \"2,3\"");
  oracle_nhol->add_option("--cap", o_cap, "scan cap on (n-1)!");

  auto* nil = app.add_subcommand("nilpotent", "power-map cosets for small p-groups");
  std::string n_group = "heisenberg", n_table;
  holomorph::u64 n_p = 3, n_ell = 2;
  nil->add_option("--group", n_group, "built-in group name (heisenberg)");
  nil->add_option("--table", n_table, "multiplication table CSV");
  nil->add_option("--p", n_p, "prime")->required();
  nil->add_option("--ell", n_ell, "power-map exponent")->required();

  auto* timport = app.add_subcommand("table-import", "validate a multiplication table");
  std::string t_table;
  timport->add_option("--table", t_table, "multiplication table CSV")->required();

  app.add_option("--threads", threads, "worker threads (default: HOLOMORPH_THREADS or cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(spec_path, skip_aut, out_path, threads);
    if (*search) return cmd_search(sp, se, sq, emit_dir);
    if (*oracle) {
      if (!*oracle_nhol || (o_table.empty() && o_abelian.empty()))
        throw holomorph::InputError("oracle nhol requires --table or --abelian");
      return cmd_oracle_nhol(o_table, o_abelian, o_cap, threads);
    }
    if (*nil) return cmd_nilpotent(n_group, n_table, n_p, n_ell, threads);
    if (*timport) return cmd_table_import(t_table);
  } catch (const holomorph::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 1;
  } catch (const holomorph::DecompositionError& e) {
    std::cerr << "refuted: " << e.what() << "\n";
    return 1;
  } catch (const holomorph::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
