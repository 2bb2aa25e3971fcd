// Command-line front end. Every subcommand reads JSON complexes (from a
// file or stdin), runs one library pipeline, and emits a machine-readable
// report: JSON on stdout by default, CSV where a flag asks for it. JSON
// reports carry no timing or host detail, so a rerun with the same
// configuration and seed is byte-identical regardless of worker count.
//
// Exit codes: 0 success, 1 validation or input error, 2 budget exceeded,
// 3 certificate violation. Errors print one structured JSON object on
// stderr.

#include "cobex/classify.hpp"
#include "cobex/covers.hpp"
#include "cobex/duality.hpp"
#include "cobex/expansion.hpp"
#include "cobex/generators.hpp"
#include "cobex/isoperimetry.hpp"
#include "cobex/json_io.hpp"
#include "cobex/metric.hpp"
#include "cobex/reports.hpp"
#include "cobex/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cobex;

struct GlobalOpts {
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t table_limit = std::uint64_t(1) << 22;
  std::uint64_t node_limit = std::uint64_t(1) << 28;
  std::string out_path;    // empty = stdout
  std::string format = "json";
};

Budget make_budget(const GlobalOpts& g) {
  Budget b;
  b.table_limit = g.table_limit;
  b.node_limit = g.node_limit;
  b.workers = g.workers;
  b.seed = g.seed;
  return b;
}

// the configuration echoed into every JSON report: semantic inputs only —
// worker count deliberately excluded so parallel reruns stay byte-identical
Json base_config(const GlobalOpts& g) {
  Json j;
  j["seed"] = g.seed;
  j["table_limit"] = g.table_limit;
  j["node_limit"] = g.node_limit;
  return j;
}

Json read_json_input(const std::string& path) {
  if (path.empty() || path == "-") {
    Json j;
    std::cin >> j;
    return j;
  }
  return load_json_file(path);
}

CellComplex load_input_complex(const std::string& path) {
  return complex_from_json(read_json_input(path));
}

void emit_text(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  require(bool(out), errc::bad_parameters,
          "cannot write '" + g.out_path + "'");
  out << text;
}

void emit_report(const GlobalOpts& g, const Json& report) {
  emit_text(g, report.dump(2) + "\n");
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(errc::bad_parameters, "cannot parse rational '" + text + "'");
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(errc::bad_parameters, "cannot parse integer list '" + text + "'");
    }
  }
  require(!out.empty(), errc::bad_parameters, "empty integer list");
  return out;
}

// per-level constants for `lift`: a rational, or '?' for unknown
std::vector<ExtRational> parse_lambdas(const std::string& text) {
  std::vector<ExtRational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "?" || item.empty())
      out.push_back(std::nullopt);
    else
      out.push_back(parse_rational(item));
  }
  return out;
}

Variant parse_variant(const std::string& text) {
  if (text == "cocycle") return Variant::cocycle;
  if (text == "coboundary") return Variant::coboundary;
  fail(errc::bad_parameters, "unknown variant '" + text + "'");
}

Algo parse_algo(const std::string& text) {
  if (text == "automatic") return Algo::automatic;
  if (text == "full-table") return Algo::full_table;
  if (text == "branch-and-bound") return Algo::branch_and_bound;
  if (text == "sampled") return Algo::sampled;
  fail(errc::bad_parameters, "unknown algorithm '" + text + "'");
}

CellComplex gen_family_complex(const std::string& family,
                     const std::vector<std::string>& params,
                     std::uint64_t seed) {
  auto iparam = [&](std::size_t i) {
    require(i < params.size(), errc::bad_parameters,
            "family '" + family + "' needs more parameters");
    return std::stoi(params[i]);
  };
  if (family == "cycle") return gen_cycle(iparam(0));
  if (family == "sphere") return gen_sphere(iparam(0));
  if (family == "torus2") return gen_torus2();
  if (family == "torus3") return gen_torus3();
  if (family == "rp2") return gen_rp2();
  if (family == "simplex-skeleton")
    return gen_simplex_skeleton(iparam(0), iparam(1));
  if (family == "simplex-boundary") return gen_simplex_boundary(iparam(0));
  if (family == "random-lm") {
    require(params.size() >= 3, errc::bad_parameters,
            "random-lm needs <vertices> <dim> <density>");
    return gen_random_lm(iparam(0), iparam(1), std::stod(params[2]), seed);
  }
  fail(errc::bad_parameters,
       "unknown family '" + family +
           "'; known: cycle, sphere, torus2, torus3, rp2, simplex-skeleton, "
           "simplex-boundary, random-lm");
}

// a tower described either by monodromy files over an explicit base or by
// the built-in cycle-tower shorthand "m,f1,f2,..."
Tower build_tower(const std::string& complex_path,
                  const std::vector<std::string>& monodromy_paths,
                  const std::string& cycle_shorthand) {
  if (!cycle_shorthand.empty()) {
    require(complex_path.empty() && monodromy_paths.empty(),
            errc::bad_parameters,
            "--cycle-tower replaces --complex/--monodromy");
    auto parts = parse_int_list(cycle_shorthand);
    return cycle_tower(parts[0],
                       std::vector<int>(parts.begin() + 1, parts.end()));
  }
  Tower tower =
      make_tower(std::make_shared<CellComplex>(load_input_complex(complex_path)));
  for (auto& path : monodromy_paths) {
    MonodromySpec spec =
        monodromy_from_json(load_json_file(path), tower.deepest());
    extend_tower(tower, spec);
  }
  return tower;
}

int dispatch(const error& e) {
  Json err;
  err["error"] = errc_name(e.code());
  err["message"] = e.what();
  std::cerr << err.dump() << "\n";
  switch (e.code()) {
    case errc::table_too_large:
    case errc::search_budget_exceeded:
      return 2;
    case errc::certificate_violated:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact expansion constants, covers, duality and fillings "
               "for finite cell complexes"};
  app.set_version_flag("--version", COBEX_VERSION_STRING);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for all randomized pipelines");
  app.add_option("--workers", g.workers, "worker threads (default 1)");
  app.add_option("--table-limit", g.table_limit,
                 "largest cochain table the solvers may enumerate")
      ->envname("COBEX_TABLE_LIMIT");
  app.add_option("--node-limit", g.node_limit,
                 "largest search-node / sweep budget")
      ->envname("COBEX_NODE_LIMIT");
  app.add_option("--out", g.out_path, "write the report here (default stdout)");
  app.add_option("--format", g.format, "json or csv (where supported)")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- check ---------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "validate a complex file");
  std::string check_path;
  cmd_check->add_option("--complex", check_path, "complex JSON (default stdin)");
  cmd_check->callback([&] {
    CellComplex X = load_input_complex(check_path);
    Json config = base_config(g);
    config["complex"] = check_path.empty() ? "-" : check_path;
    Json rep;
    rep["valid"] = true;
    rep["name"] = X.name();
    rep["dim"] = X.dim();
    Json cells = Json::array();
    for (int k = 0; k <= X.dim(); ++k) cells.push_back(X.cells(k));
    rep["cells"] = std::move(cells);
    Json out = report_envelope("check", std::move(config));
    out["report"] = std::move(rep);
    emit_report(g, out);
  });

  // ---- expansion -------------------------------------------------------
  auto* cmd_exp = app.add_subcommand("expansion", "exact expansion constant");
  std::string exp_path, exp_coeff = "z2", exp_variant = "cocycle",
              exp_algo = "automatic";
  int exp_dim = 0;
  cmd_exp->add_option("--complex", exp_path, "complex JSON (default stdin)");
  cmd_exp->add_option("--dim", exp_dim, "cochain degree")->required();
  cmd_exp->add_option("--coeff", exp_coeff, "coefficient group (z2, z3, z2xz4...)");
  cmd_exp->add_option("--variant", exp_variant, "cocycle or coboundary");
  cmd_exp->add_option("--algo", exp_algo, "automatic, full-table or sampled");
  cmd_exp->callback([&] {
    CellComplex X = load_input_complex(exp_path);
    CoefficientGroup A = CoefficientGroup::parse(exp_coeff);
    ExpansionReport rep = expansion_constant(
        X, exp_dim, A, parse_variant(exp_variant), parse_algo(exp_algo),
        make_budget(g));
    if (g.format == "csv") {
      emit_text(g, expansion_csv({rep}));
      return;
    }
    Json config = base_config(g);
    config["complex"] = exp_path.empty() ? "-" : exp_path;
    config["dim"] = exp_dim;
    config["coeff"] = exp_coeff;
    config["variant"] = exp_variant;
    config["algo"] = exp_algo;
    Json out = report_envelope("expansion", std::move(config));
    out["report"] = expansion_to_json(rep);
    emit_report(g, out);
  });

  // ---- metric ----------------------------------------------------------
  auto* cmd_metric =
      app.add_subcommand("metric", "cell adjacency graph and components");
  std::string met_path, met_coeff = "z2";
  int met_dim = 0;
  bool met_text = false;
  cmd_metric->add_option("--complex", met_path, "complex JSON (default stdin)");
  cmd_metric->add_option("--dim", met_dim, "cell dimension")->required();
  cmd_metric->add_option("--coeff", met_coeff, "coefficient group");
  cmd_metric->add_flag("--text", met_text, "emit the edge list as plain text");
  cmd_metric->callback([&] {
    CellComplex X = load_input_complex(met_path);
    CellGraph graph =
        coboundary_graph(X, met_dim, CoefficientGroup::parse(met_coeff));
    if (met_text) {
      emit_text(g, edge_list_text(graph));
      return;
    }
    Json config = base_config(g);
    config["complex"] = met_path.empty() ? "-" : met_path;
    config["dim"] = met_dim;
    config["coeff"] = met_coeff;
    Json rep;
    rep["num_cells"] = graph.num_cells();
    Json edges = Json::array();
    for (auto& [a, b] : graph.edges()) edges.push_back(Json::array({a, b}));
    rep["edges"] = std::move(edges);
    rep["components"] = components_to_json(graph.components());
    Json out = report_envelope("metric", std::move(config));
    out["report"] = std::move(rep);
    emit_report(g, out);
  });

  // ---- cover build / cover tower ----------------------------------------
  auto* cmd_cover = app.add_subcommand("cover", "finite covers from monodromy");
  cmd_cover->require_subcommand(1);

  auto* cmd_cover_build = cmd_cover->add_subcommand("build", "one cover");
  std::string cb_path, cb_monodromy;
  cmd_cover_build->add_option("--complex", cb_path, "base complex (default stdin)");
  cmd_cover_build->add_option("--monodromy", cb_monodromy, "monodromy JSON")
      ->required();
  cmd_cover_build->callback([&] {
    CellComplex base = load_input_complex(cb_path);
    MonodromySpec spec =
        monodromy_from_json(load_json_file(cb_monodromy), base);
    CoveringMap cov = build_cover(spec);
    Json config = base_config(g);
    config["complex"] = cb_path.empty() ? "-" : cb_path;
    config["monodromy"] = cb_monodromy;
    Json out = report_envelope("cover build", std::move(config));
    out["report"] = cover_to_json(cov);
    emit_report(g, out);
  });

  auto* cmd_cover_tower =
      cmd_cover->add_subcommand("tower", "torus covers for a list of k");
  std::string ct_path, ct_k = "1,2,3", ct_kind = "grid";
  cmd_cover_tower->add_option("--complex", ct_path,
                              "base torus complex (default: built-in torus2)");
  cmd_cover_tower->add_option("--k", ct_k, "comma-separated cover indices");
  cmd_cover_tower->add_option("--kind", ct_kind, "grid or cyclic")
      ->check(CLI::IsMember({"grid", "cyclic"}));
  cmd_cover_tower->callback([&] {
    CellComplex base =
        ct_path.empty() ? gen_torus2() : load_input_complex(ct_path);
    Json covers = Json::array();
    for (int k : parse_int_list(ct_k)) {
      MonodromySpec spec = ct_kind == "grid" ? torus2_grid_spec(base, k)
                                             : torus2_cyclic_spec(base, k);
      CoveringMap cov = build_cover(spec);
      Json row;
      row["k"] = k;
      row["monodromy"] = monodromy_to_json(spec);
      row["cover"] = cover_to_json(cov);
      covers.push_back(std::move(row));
    }
    Json config = base_config(g);
    config["complex"] = ct_path.empty() ? "builtin:torus2" : ct_path;
    config["k"] = ct_k;
    config["kind"] = ct_kind;
    Json out = report_envelope("cover tower", std::move(config));
    out["report"] = Json{{"base", base.name()}, {"covers", std::move(covers)}};
    emit_report(g, out);
  });

  // ---- dual build --------------------------------------------------------
  auto* cmd_dual = app.add_subcommand("dual", "dual complexes of closed manifolds");
  cmd_dual->require_subcommand(1);
  auto* cmd_dual_build = cmd_dual->add_subcommand("build", "dual complex");
  std::string db_path;
  cmd_dual_build->add_option("--complex", db_path,
                             "triangulated closed manifold (default stdin)");
  cmd_dual_build->callback([&] {
    CellComplex X = load_input_complex(db_path);
    DualStructure ds = dual_complex(X);
    Json config = base_config(g);
    config["complex"] = db_path.empty() ? "-" : db_path;
    Json out = report_envelope("dual build", std::move(config));
    out["report"] = dual_to_json(ds);
    emit_report(g, out);
  });

  // ---- fill ---------------------------------------------------------------
  auto* cmd_fill = app.add_subcommand("fill", "minimum-norm filling of a cycle");
  std::string fill_path, fill_cycle, fill_algo = "automatic";
  cmd_fill->add_option("--complex", fill_path, "complex JSON (default stdin)");
  cmd_fill->add_option("--cycle", fill_cycle, "cycle as a cochain JSON file")
      ->required();
  cmd_fill->add_option("--algo", fill_algo, "search algorithm");
  cmd_fill->callback([&] {
    CellComplex X = load_input_complex(fill_path);
    Cochain p = cochain_from_json(load_json_file(fill_cycle), X);
    MinFilling mf = min_filling(p, parse_algo(fill_algo), make_budget(g));
    Json config = base_config(g);
    config["complex"] = fill_path.empty() ? "-" : fill_path;
    config["cycle"] = fill_cycle;
    config["algo"] = fill_algo;
    Json out = report_envelope("fill", std::move(config));
    out["report"] = min_filling_to_json(mf);
    emit_report(g, out);
  });

  // ---- expanderfill ---------------------------------------------------------
  auto* cmd_ef = app.add_subcommand(
      "expanderfill", "duality-certified filling on a closed manifold");
  std::string ef_path, ef_cycle, ef_lambda, ef_algo = "automatic";
  cmd_ef->add_option("--complex", ef_path,
                     "triangulated closed manifold (default stdin)");
  cmd_ef->add_option("--cycle", ef_cycle,
                     "dual 1-chain as a cochain JSON file")
      ->required();
  cmd_ef->add_option("--lambda", ef_lambda,
                     "exact degree-1 expansion constant, e.g. 5/3")
      ->required();
  cmd_ef->add_option("--algo", ef_algo, "search algorithm");
  cmd_ef->callback([&] {
    CellComplex X = load_input_complex(ef_path);
    DualStructure ds = dual_complex(X);
    Cochain p = cochain_from_json(load_json_file(ef_cycle), *ds.dual);
    ExpanderCertificate cert =
        expander_filling(ds, parse_rational(ef_lambda), p,
                         parse_algo(ef_algo), make_budget(g));
    Json config = base_config(g);
    config["complex"] = ef_path.empty() ? "-" : ef_path;
    config["cycle"] = ef_cycle;
    config["lambda"] = ef_lambda;
    config["algo"] = ef_algo;
    Json out = report_envelope("expanderfill", std::move(config));
    out["report"] = expander_cert_to_json(cert);
    emit_report(g, out);
  });

  // ---- dehn -------------------------------------------------------------------
  auto* cmd_dehn =
      app.add_subcommand("dehn", "filling-ratio profile of random cycles");
  std::string dehn_path, dehn_coeff = "z2", dehn_cycles;
  int dehn_dim = 0, dehn_samples = 20, dehn_sparsity = 3;
  cmd_dehn->add_option("--complex", dehn_path, "complex JSON (default stdin)");
  cmd_dehn->add_option("--dim", dehn_dim, "cycle degree")->required();
  cmd_dehn->add_option("--coeff", dehn_coeff, "coefficient group");
  cmd_dehn->add_option("--samples", dehn_samples, "number of random cycles");
  cmd_dehn->add_option("--sparsity", dehn_sparsity,
                       "cells per sampled source chain");
  cmd_dehn->add_option("--cycles", dehn_cycles,
                       "extra cycles: cochain JSON object or array");
  cmd_dehn->callback([&] {
    CellComplex X = load_input_complex(dehn_path);
    CoefficientGroup A = CoefficientGroup::parse(dehn_coeff);
    std::vector<Cochain> extra;
    if (!dehn_cycles.empty()) {
      Json j = load_json_file(dehn_cycles);
      if (j.is_array())
        for (auto& e : j) extra.push_back(cochain_from_json(e, X));
      else
        extra.push_back(cochain_from_json(j, X));
    }
    DehnProfile prof =
        dehn_profile(X, A, dehn_dim, dehn_samples, g.seed, dehn_sparsity,
                     extra, make_budget(g));
    if (g.format == "csv") {
      emit_text(g, dehn_csv(prof));
      return;
    }
    Json config = base_config(g);
    config["complex"] = dehn_path.empty() ? "-" : dehn_path;
    config["dim"] = dehn_dim;
    config["coeff"] = dehn_coeff;
    config["samples"] = dehn_samples;
    config["sparsity"] = dehn_sparsity;
    config["cycles"] = dehn_cycles;
    Json out = report_envelope("dehn", std::move(config));
    out["report"] = dehn_to_json(prof);
    emit_report(g, out);
  });

  // ---- lift --------------------------------------------------------------------
  auto* cmd_lift = app.add_subcommand(
      "lift", "project a cochain down a tower and lift a nearest cocycle back");
  std::string lift_path, lift_cycle_tower, lift_cochain, lift_lambdas;
  std::vector<std::string> lift_monodromy;
  cmd_lift->add_option("--complex", lift_path, "base complex JSON");
  cmd_lift->add_option("--monodromy", lift_monodromy,
                       "monodromy JSON per level, shallow to deep");
  cmd_lift->add_option("--cycle-tower", lift_cycle_tower,
                       "built-in cycle tower 'm,f1,f2,...'");
  cmd_lift->add_option("--cochain", lift_cochain,
                       "cochain JSON on the deepest level")
      ->required();
  cmd_lift->add_option("--lambdas", lift_lambdas,
                       "per-level expansion constants, e.g. '2,1/3,?'")
      ->required();
  cmd_lift->callback([&] {
    Tower tower = build_tower(lift_path, lift_monodromy, lift_cycle_tower);
    Cochain c =
        cochain_from_json(load_json_file(lift_cochain), tower.deepest());
    LiftReport rep =
        lifting_experiment(tower, c.degree(), c.group(), c,
                           parse_lambdas(lift_lambdas), make_budget(g));
    Json config = base_config(g);
    config["complex"] = lift_path.empty() ? "-" : lift_path;
    config["monodromy"] = lift_monodromy;
    config["cycle_tower"] = lift_cycle_tower;
    config["cochain"] = lift_cochain;
    config["lambdas"] = lift_lambdas;
    Json out = report_envelope("lift", std::move(config));
    out["report"] = lift_report_to_json(rep);
    emit_report(g, out);
  });

  // ---- witness0 -------------------------------------------------------------------
  auto* cmd_wit = app.add_subcommand(
      "witness0", "two-point cycle defeating a dimension-0 filling constant");
  std::string wit_path, wit_cycle_tower, wit_kappa;
  std::vector<std::string> wit_monodromy;
  cmd_wit->add_option("--complex", wit_path, "base complex JSON");
  cmd_wit->add_option("--monodromy", wit_monodromy,
                      "monodromy JSON per level, shallow to deep");
  cmd_wit->add_option("--cycle-tower", wit_cycle_tower,
                      "built-in cycle tower 'm,f1,f2,...'");
  cmd_wit->add_option("--kappa", wit_kappa, "claimed constant, e.g. 1/5")
      ->required();
  cmd_wit->callback([&] {
    Tower tower = build_tower(wit_path, wit_monodromy, wit_cycle_tower);
    ZeroDimWitness w =
        zero_dim_witness(tower, parse_rational(wit_kappa), make_budget(g));
    Json config = base_config(g);
    config["complex"] = wit_path.empty() ? "-" : wit_path;
    config["monodromy"] = wit_monodromy;
    config["cycle_tower"] = wit_cycle_tower;
    config["kappa"] = wit_kappa;
    Json out = report_envelope("witness0", std::move(config));
    out["report"] = witness_to_json(w);
    emit_report(g, out);
  });

  // ---- gen ---------------------------------------------------------------------
  auto* cmd_gen = app.add_subcommand("gen", "emit a generator complex as JSON");
  std::string gen_family;
  std::vector<std::string> gen_params;
  cmd_gen->add_option("family", gen_family,
                      "cycle, sphere, torus2, torus3, rp2, simplex-skeleton, "
                      "simplex-boundary, random-lm")
      ->required();
  cmd_gen->add_option("params", gen_params, "family parameters");
  cmd_gen->callback([&] {
    CellComplex X = gen_family_complex(gen_family, gen_params, g.seed);
    emit_text(g, complex_to_json(X).dump(2) + "\n");
  });

  // global flags may trail the subcommand: `gen cycle 6 --out c.json`
  std::function<void(CLI::App*)> allow_trailing_globals = [&](CLI::App* a) {
    for (auto* sc : a->get_subcommands(nullptr)) {
      sc->fallthrough();
      allow_trailing_globals(sc);
    }
  };
  allow_trailing_globals(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const error& e) {
    return dispatch(e);
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "Unhandled";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
