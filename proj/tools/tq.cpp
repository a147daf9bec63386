// Command-line interface: fan validation, quivers of sections, multilinear
// series data, toric/relation ideals, and positivity certificates.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tq/catalog.hpp"
#include "tq/fan.hpp"
#include "tq/groebner.hpp"
#include "tq/jsonio.hpp"
#include "tq/moduli.hpp"
#include "tq/quiver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertificateFails = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitLimitExceeded = 3;

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

tq::Fan resolve_fan(const std::string& arg) {
  if (file_exists(arg)) return tq::parse_fan(tq::load_json(arg));
  if (auto e = tq::catalog::find(arg)) return e->fan;
  throw tq::error("Parse", "no such file or catalog entry: " + arg);
}

struct BundleInput {
  std::vector<tq::TWeilDivisor> bundles;
  std::vector<tq::Arrow> arrow_order;              // may be empty
  std::vector<std::vector<tq::Int>> circuit_basis; // may be empty
};

BundleInput resolve_bundles(const std::string& arg, const tq::Fan& fan) {
  if (file_exists(arg)) {
    BundleInput in;
    in.bundles = tq::parse_bundle_list(tq::load_json(arg), fan.rays.size());
    return in;
  }
  if (auto e = tq::catalog::find(arg)) {
    if (e->bundles.empty())
      throw tq::error("Parse", "catalog entry has no bundle list: " + arg);
    return {e->bundles, e->arrow_order, e->circuit_basis};
  }
  throw tq::error("Parse", "no such file or catalog entry: " + arg);
}

tq::Quiver build_quiver(const tq::Fan& fan, const BundleInput& in) {
  auto qs = tq::complete_quiver_of_sections(fan, in.bundles);
  if (!in.arrow_order.empty())
    return tq::reorder_arrows(qs.quiver, in.arrow_order);
  return qs.quiver;
}

std::string poly_list(const std::vector<tq::Polynomial>& ps) {
  std::string s;
  for (const auto& p : ps) {
    if (!s.empty()) s += ", ";
    s += tq::poly_to_string(p);
  }
  return s.empty() ? "0" : s;
}

tq::Json quiver_json(const tq::Fan& fan, const tq::Quiver& q) {
  tq::Json j;
  j["num_vertices"] = q.num_vertices;
  j["arrows"] = tq::Json::array();
  for (const auto& a : q.arrows) {
    tq::Json arrow;
    arrow["tail"] = a.tail;
    arrow["head"] = a.head;
    arrow["label"] = tq::int_vector_json(a.label);
    arrow["monomial"] = tq::divisor_label(a.label);
    j["arrows"].push_back(arrow);
  }
  j["relations"] = tq::Json::array();
  for (const auto& rel : tq::quiver_relations(q, fan.rays.size())) {
    tq::Json r;
    r["lhs"] = rel.lhs.arrows;
    r["rhs"] = rel.rhs.arrows;
    j["relations"].push_back(r);
  }
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"bound quivers of sections on projective toric varieties"};
  app.require_subcommand(1);

  std::string fan_arg, bundle_arg, basis_file, nef_test, check_kind, emit_name;
  bool want_dot = false, want_json = false;

  auto* fan_cmd = app.add_subcommand("fan", "fan operations");
  auto* fan_validate = fan_cmd->add_subcommand("validate", "validate a fan");
  fan_validate->add_option("fan", fan_arg)->required();

  auto* quiver_cmd = app.add_subcommand("quiver", "quiver operations");
  auto* quiver_build =
      quiver_cmd->add_subcommand("build", "quiver of sections");
  quiver_build->add_option("fan", fan_arg)->required();
  quiver_build->add_option("bundles", bundle_arg)->required();
  quiver_build->add_flag("--dot", want_dot, "emit graphviz");
  quiver_build->add_flag("--json", want_json, "emit JSON");

  auto* series_cmd = app.add_subcommand("series", "multilinear series data");
  series_cmd->add_option("fan", fan_arg)->required();
  series_cmd->add_option("bundles", bundle_arg)->required();
  series_cmd->add_option("--basis", basis_file,
                         "JSON file with a circulation basis to use");
  series_cmd->add_option("--nef-test", nef_test,
                         "comma-separated weight to test for nef/ample");

  auto* ideals_cmd = app.add_subcommand("ideals", "toric and relation ideals");
  ideals_cmd->add_option("fan", fan_arg)->required();
  ideals_cmd->add_option("bundles", bundle_arg)->required();

  auto* check_cmd = app.add_subcommand("check", "positivity certificates");
  check_cmd->add_option("kind", check_kind)
      ->required()
      ->check(CLI::IsMember({"bpf", "very-ample", "fine"}));
  check_cmd->add_option("fan", fan_arg)->required();
  check_cmd->add_option("bundles", bundle_arg)->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "built-in examples");
  auto* catalog_list = catalog_cmd->add_subcommand("list", "list entries");
  auto* catalog_emit =
      catalog_cmd->add_subcommand("emit", "print an entry as JSON");
  catalog_emit->add_option("name", emit_name)->required();
  (void)catalog_list;

  CLI11_PARSE(app, argc, argv);

  if (fan_validate->parsed()) {
    tq::Fan fan = resolve_fan(fan_arg);
    tq::FanReport rep = tq::validate_fan(fan);
    tq::Json j;
    j["valid"] = rep.valid;
    j["smooth"] = rep.smooth;
    j["simplicial"] = rep.simplicial;
    j["complete"] = rep.complete;
    j["errors"] = rep.errors;
    std::cout << j.dump(2) << "\n";
    return rep.valid ? kExitOk : kExitCertificateFails;
  }

  if (quiver_build->parsed()) {
    tq::Fan fan = resolve_fan(fan_arg);
    tq::require_valid(fan);
    BundleInput in = resolve_bundles(bundle_arg, fan);
    tq::Quiver q = build_quiver(fan, in);
    if (want_dot) {
      std::cout << tq::quiver_to_dot(q);
    } else if (want_json) {
      std::cout << quiver_json(fan, q).dump(2) << "\n";
    } else {
      std::cout << "vertices: " << q.num_vertices << "\n";
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        std::cout << "a" << a + 1 << ": " << q.arrows[a].tail << " -> "
                  << q.arrows[a].head << "  div "
                  << tq::divisor_label(q.arrows[a].label) << "\n";
      auto rels = tq::quiver_relations(q, fan.rays.size());
      std::cout << "relations: " << rels.size() << "\n";
      for (const auto& rel : rels) {
        auto pretty = [](const tq::Path& p) {
          std::string s;
          for (int a : p.arrows) s += "a" + std::to_string(a + 1);
          return s.empty() ? std::string("e") : s;
        };
        std::cout << "  " << pretty(rel.lhs) << " - " << pretty(rel.rhs)
                  << "\n";
      }
    }
    return kExitOk;
  }

  if (series_cmd->parsed()) {
    tq::Fan fan = resolve_fan(fan_arg);
    tq::require_valid(fan);
    BundleInput in = resolve_bundles(bundle_arg, fan);
    tq::Quiver q = build_quiver(fan, in);
    std::vector<std::vector<tq::Int>> basis = in.circuit_basis;
    if (!basis_file.empty()) {
      basis.clear();
      for (const auto& row : tq::load_json(basis_file))
        basis.push_back(tq::detail::json_int_vector(row, "basis row"));
    }
    tq::SeriesFan sf =
        tq::multilinear_fan(q, basis.empty() ? nullptr : &basis);
    tq::Json j;
    j["num_arrows"] = q.arrows.size();
    j["rank"] = sf.fan.rank;
    j["rays"] = tq::Json::array();
    for (const auto& ray : sf.fan.rays)
      j["rays"].push_back(tq::int_vector_json(ray));
    j["num_trees"] = sf.trees.size();
    j["max_cones"] = sf.fan.max_cones;
    j["special_weight"] = tq::int_vector_json(tq::special_weight(q));
    auto theta = tq::special_weight(q);
    auto na = tq::nef_ample_membership(q, theta);
    j["special_weight_nef"] = na.nef;
    j["special_weight_ample"] = na.ample;
    bool tested_ok = true;
    if (!nef_test.empty()) {
      std::vector<tq::Int> w;
      std::string cur;
      for (char ch : nef_test + ",") {
        if (ch == ',') {
          if (!cur.empty()) w.push_back(tq::Int(cur));
          cur.clear();
        } else {
          cur += ch;
        }
      }
      auto t = tq::nef_ample_membership(q, w);
      j["tested_weight"] = tq::int_vector_json(w);
      j["tested_weight_nef"] = t.nef;
      j["tested_weight_ample"] = t.ample;
      tested_ok = t.ample;
    }
    std::cout << j.dump(2) << "\n";
    return tested_ok ? kExitOk : kExitCertificateFails;
  }

  if (ideals_cmd->parsed()) {
    tq::Fan fan = resolve_fan(fan_arg);
    tq::require_valid(fan);
    BundleInput in = resolve_bundles(bundle_arg, fan);
    tq::Quiver q = build_quiver(fan, in);
    tq::Ideal iq = tq::toric_ideal(fan, q);
    tq::Ideal ir = tq::relation_ideal(fan, q);
    tq::Json j;
    j["toric_ideal"] = tq::Json::array();
    for (const auto& g : iq.groebner(tq::TermOrder::grevlex()))
      j["toric_ideal"].push_back(tq::poly_to_string(g));
    j["relation_ideal"] = tq::Json::array();
    for (const auto& g : ir.groebner(tq::TermOrder::grevlex()))
      j["relation_ideal"].push_back(tq::poly_to_string(g));
    tq::Ideal sat = tq::saturate_by_variable_primes(ir, tq::vertex_primes(q));
    j["saturation_equals_toric"] = tq::ideal_equal(sat, iq);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (check_cmd->parsed()) {
    tq::Fan fan = resolve_fan(fan_arg);
    tq::require_valid(fan);
    BundleInput in = resolve_bundles(bundle_arg, fan);
    tq::Quiver q = build_quiver(fan, in);
    tq::Json j;
    bool holds = false;
    if (check_kind == "bpf") {
      holds = tq::is_basepoint_free(fan, q);
      j["basepoint_free"] = holds;
    } else if (check_kind == "very-ample") {
      holds = tq::is_very_ample_series(fan, in.bundles, q);
      j["very_ample"] = holds;
    } else {
      tq::FineReport rep = tq::fine_report(fan, in.bundles, q);
      j["connected"] = rep.connected;
      j["rooted"] = rep.rooted;
      j["acyclic"] = rep.acyclic;
      j["basepoint_free"] = rep.basepoint_free;
      j["very_ample"] = rep.very_ample;
      j["saturation_equal"] = rep.saturation_equal;
      j["fine"] = rep.fine;
      holds = rep.fine;
    }
    std::cout << j.dump(2) << "\n";
    return holds ? kExitOk : kExitCertificateFails;
  }

  if (catalog_cmd->parsed()) {
    if (catalog_emit->parsed()) {
      auto e = tq::catalog::find(emit_name);
      if (!e) throw tq::error("Parse", "no such catalog entry: " + emit_name);
      tq::Json j;
      j["name"] = e->name;
      tq::Json fj;
      fj["rank"] = e->fan.rank;
      fj["rays"] = tq::Json::array();
      for (const auto& ray : e->fan.rays)
        fj["rays"].push_back(tq::int_vector_json(ray));
      fj["max_cones"] = e->fan.max_cones;
      fj["complete"] = e->fan.complete;
      j["fan"] = fj;
      if (!e->bundles.empty()) {
        j["bundles"] = tq::Json::array();
        for (const auto& b : e->bundles)
          j["bundles"].push_back(tq::int_vector_json(b));
      }
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& e : tq::catalog::entries())
        std::cout << e.name << (e.bundles.empty() ? "" : " (with bundles)")
                  << "\n";
    }
    return kExitOk;
  }
  return kExitInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tq::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == "LimitExceeded") return kExitLimitExceeded;
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}
