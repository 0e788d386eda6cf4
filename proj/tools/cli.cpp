#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "../tests/acceptance.hpp"
#include "CLI11.hpp"
#include "firmcor/dualring.hpp"
#include "firmcor/galois.hpp"
#include "json.hpp"

namespace firmcor {

using nlohmann::json;

namespace {

// one command's outcome; text and JSON are rendered from the same fields
struct Verdict {
  std::string command;
  std::string instance;
  json facts = json::object();
  json witnesses = json::object();
  Report checks;
  bool math_ok = true;  // properties the command asserts
  std::string document;  // firmcor-1 text emitted by comatrix
  std::optional<double> millis;

  bool ok() const { return math_ok && checks.ok(); }
};

struct InputError {
  std::string kind;
  std::string detail;
};

json cols_json(const Mat& m) {
  json out = json::array();
  for (int j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

json verdict_json(const Verdict& v) {
  json failed = json::array();
  for (auto& c : v.checks.checks)
    if (!c.ok) failed.push_back({{"name", c.name}, {"detail", c.detail}, {"witness", c.witness}});
  json j = {{"format", "firmcor-report-1"},
            {"command", v.command},
            {"instance", v.instance},
            {"facts", v.facts},
            {"witnesses", v.witnesses},
            {"checks", {{"total", v.checks.checks.size()}, {"failed", failed}}},
            {"result", v.ok() ? "ok" : "failed"},
            {"exit_code", v.ok() ? 0 : 1}};
  if (!v.document.empty()) j["document"] = json::parse(v.document);
  if (v.millis) j["timing_ms"] = *v.millis;
  return j;
}

void render_text(const Verdict& v, std::ostream& out) {
  json j = verdict_json(v);
  out << "command: " << v.command << "\n";
  if (!v.instance.empty()) out << "instance: " << v.instance << "\n";
  for (auto it = j["facts"].begin(); it != j["facts"].end(); ++it) out << it.key() << ": " << it.value().dump() << "\n";
  for (auto it = j["witnesses"].begin(); it != j["witnesses"].end(); ++it)
    out << "witness " << it.key() << ": " << it.value().dump() << "\n";
  const json& failed = j["checks"]["failed"];
  out << "checks: " << j["checks"]["total"].get<size_t>() - failed.size() << " passed, " << failed.size() << " failed\n";
  for (auto& f : failed) out << "FAIL " << f["name"].get<std::string>() << ": " << f["detail"].get<std::string>() << " " << f["witness"].dump() << "\n";
  if (v.millis) out << "timing_ms: " << *v.millis << "\n";
  out << "result: " << j["result"].get<std::string>() << "\n";
}

InstanceBundle resolve(const std::string& what) {
  if (auto b = find_bundled(what)) return *b;
  InstanceBundle extra = corner_against_trivial();
  if (extra.name == what) return extra;
  if (!std::filesystem::exists(what)) throw InputError{"NotFound", "no bundled instance or file named " + what};
  auto b = load_instance(what);
  if (!b) throw InputError{b.error().kind, b.error().str()};
  return *b;
}

GaloisSetup setup_or_throw(const InstanceBundle& b) {
  auto g = galois_setup(b);
  if (!g) throw InputError{g.error().kind, g.error().str()};
  return *g;
}

void add_dims(Verdict& v, const InstanceBundle& b) {
  const ComatrixData& d = b.data;
  v.facts["p"] = d.A->p;
  v.facts["dims"] = {{"A", d.A->dim}, {"B", d.B->dim}, {"R", d.R->dim}, {"Sigma", d.sigma.dim}, {"SigmaPrime", d.sigmap.dim}};
  if (b.target) v.facts["dims"]["C_target"] = b.target->dim();
}

Verdict cmd_validate(const InstanceBundle& b) {
  Verdict v;
  v.checks = validate_instance(b);
  add_dims(v, b);
  v.facts["has_target"] = b.target.has_value();
  return v;
}

Verdict cmd_comatrix(const InstanceBundle& b) {
  Verdict v;
  auto cc = build_comatrix(b.data);
  if (!cc) throw InputError{cc.error().kind, cc.error().str()};
  v.checks = validate_coring(cc->coring);
  v.checks.merge(cc->report, "construction");
  add_dims(v, b);
  v.facts["dims"]["C"] = cc->coring.dim();
  InstanceBundle out = b;
  out.name = b.name + "-comatrix";
  out.notes = "comatrix coring of " + b.name + " with Σ as its comodule";
  out.target = cc->coring;
  out.target->name = "Σ′⊗_RΣ";
  out.rho = Tensor::make({cc->s.sigma_R, cc->coring.C}).sec() * cc->sigma.rho;
  v.document = save_instance(out);
  return v;
}

Verdict cmd_galois(const InstanceBundle& b) {
  Verdict v;
  GaloisSetup g = setup_or_throw(b);
  GaloisVerdict gv = galois_check(g);
  v.checks = g.report;
  v.checks.merge(gv.report, "verdict");
  v.facts["galois"] = gv.galois;
  v.facts["can_shape"] = {g.maps.can.rows(), g.maps.can.cols()};
  if (!gv.galois) {
    v.witnesses["can_" + std::string(gv.witness_kind == "kernel vector" ? "kernel_vector" : "cokernel_functional")] = gv.witness;
    v.math_ok = false;
  }
  return v;
}

void add_flat(Verdict& v, const FlatReport& f) {
  v.facts["flat"] = f.flat;
  v.facts["faithfully_flat"] = tri_name(f.faithfully_flat);
  v.facts["checked_ideals"] = f.checked_ideals;
  v.facts["ideal_family"] = f.approximate ? "ideals generated by at most two basis elements" : "all right ideals";
  if (f.faithfully_flat == Tri::refuted) v.witnesses["witness_ideal"] = cols_json(f.witness_ideal);
  if (!f.flat) v.witnesses["nonflat_ideal"] = cols_json(f.nonflat_ideal);
}

void budget_guard(const FlatReport& f) {
  for (auto& c : f.report.checks)
    if (c.name == "ideals" && !c.ok) throw InputError{"BudgetExceeded", c.detail + "; raise --ideal-budget"};
}

Verdict cmd_flat(const InstanceBundle& b, int budget) {
  Verdict v;
  auto cc = build_comatrix(b.data);
  if (!cc) throw InputError{cc.error().kind, cc.error().str()};
  const Bimodule& s = cc->s.sigma_R;
  FlatReport f = flat_report(s, s.lring, budget);
  budget_guard(f);
  v.checks = f.report;
  add_flat(v, f);
  v.math_ok = f.flat && f.faithfully_flat == Tri::certified;
  return v;
}

Verdict cmd_descent(const InstanceBundle& b, int max_dim, int budget) {
  Verdict v;
  GaloisSetup g = setup_or_throw(b);
  auto r = descent_report(g, max_dim, budget);
  if (!r) throw InputError{r.error().kind, r.error().str()};
  budget_guard(r->flat);
  v.checks = r->report;
  v.facts["label"] = r->label;
  v.facts["comodules"] = r->comodules;
  v.facts["comodules_per_dim"] = r->per_dim;
  v.facts["galois"] = r->galois;
  add_flat(v, r->flat);
  v.facts["generator"] = r->generator;
  v.facts["left_ideal"] = r->left_ideal;
  v.facts["counits_bijective"] = r->counits_bijective;
  v.facts["clave_consistent"] = r->clave_consistent;
  v.facts["units_bijective"] = r->units_bijective;
  v.facts["units_injective"] = r->units_injective;
  v.facts["zeta_T_bijective"] = r->zeta_T_bijective;
  v.facts["flatdescent"] = r->flatdescent;
  v.facts["ffdescent"] = r->ffdescent;
  if (r->first_non_bijective >= 0) v.witnesses["first_comodule_with_zeta_not_bijective"] = r->first_non_bijective;
  v.math_ok = r->galois && r->flat.flat && r->flat.faithfully_flat == Tri::certified && r->generator && r->counits_bijective;
  return v;
}

Verdict cmd_dual(const InstanceBundle& b, int max_dim) {
  Verdict v;
  Coring c;
  if (b.target) {
    c = *b.target;
  } else {
    auto cc = build_comatrix(b.data);
    if (!cc) throw InputError{cc.error().kind, cc.error().str()};
    c = cc->coring;
  }
  auto r = dual_report(c, max_dim);
  if (!r) throw InputError{r.error().kind, r.error().str()};
  v.checks = r->report;
  v.facts["coring"] = b.target ? "target" : "comatrix";
  v.facts["dim_C"] = c.dim();
  v.facts["dim_dual"] = r->dual.dim();
  v.facts["rational_comatrix_galois"] = r->comatrix.verdict.galois;
  v.facts["comodules"] = r->comodules;
  v.facts["firm_modules"] = r->modules;
  return v;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"comatrix corings, Galois comodules and descent over F_p", "firmcor"};
  app.require_subcommand(1);
  bool as_json = false, timing = false;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_flag("--timing", timing, "add wall-clock time to the report");
  std::string inst, out_path;
  int budget = 4096, max_dim = 2, dual_dim = 1;
  bool quick = false;

  auto* validate = app.add_subcommand("validate", "validate an instance");
  validate->add_option("instance", inst, "bundled name or file")->required();
  auto* comatrix = app.add_subcommand("comatrix", "build the comatrix coring");
  comatrix->add_option("instance", inst, "bundled name or file")->required();
  comatrix->add_option("--out", out_path, "write the coring as a firmcor-1 file");
  auto* galois = app.add_subcommand("galois", "canonical map and Galois verdict");
  galois->add_option("instance", inst, "bundled name or file")->required();
  auto* flat = app.add_subcommand("flat", "flatness of Σ over R by the ideal criterion");
  flat->add_option("instance", inst, "bundled name or file")->required();
  flat->add_option("--ideal-budget", budget, "maximum number of right ideals")->check(CLI::PositiveNumber);
  auto* descent = app.add_subcommand("descent", "descent report over enumerated comodules");
  descent->add_option("instance", inst, "bundled name or file")->required();
  descent->add_option("--max-dim", max_dim, "largest free rank enumerated")->required()->check(CLI::Range(0, 6));
  descent->add_option("--ideal-budget", budget, "maximum number of right ideals")->check(CLI::PositiveNumber);
  auto* dual = app.add_subcommand("dual", "dual ring, rational modules and C⊗_R *C");
  dual->add_option("instance", inst, "bundled name or file")->required();
  dual->add_option("--max-dim", dual_dim, "largest free rank enumerated")->check(CLI::Range(0, 4));
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_flag("--quick", quick, "smaller oracle run and descent depth");
  auto* list = app.add_subcommand("list", "bundled instances");
  for (auto* s : {validate, comatrix, galois, flat, descent, dual, selftest, list}) s->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  auto* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  auto start = std::chrono::steady_clock::now();
  try {
    if (cmd == list) {
      json names = json::array();
      for (auto& b : bundled()) names.push_back({{"name", b.name}, {"notes", b.notes}});
      InstanceBundle extra = corner_against_trivial();
      names.push_back({{"name", extra.name}, {"notes", extra.notes}});
      if (as_json) {
        out << json{{"format", "firmcor-report-1"}, {"command", "list"}, {"instances", names}, {"result", "ok"}, {"exit_code", 0}}.dump(2)
            << "\n";
      } else {
        for (auto& n : names) out << n["name"].get<std::string>() << "  " << n["notes"].get<std::string>() << "\n";
      }
      return 0;
    }
    if (cmd == selftest) {
      acceptance::Options opt;
      opt.quick = quick;
      auto results = acceptance::run(opt);
      bool all = std::all_of(results.begin(), results.end(), [](auto& c) { return c.pass; });
      if (as_json) {
        json rows = json::array();
        for (auto& c : results) rows.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
        json j = {{"format", "firmcor-report-1"}, {"command", "selftest"}, {"quick", quick}, {"criteria", rows},
                  {"result", all ? "ok" : "failed"}, {"exit_code", all ? 0 : 1}};
        out << j.dump(2) << "\n";
      } else {
        for (auto& c : results) out << acceptance::line(c) << "\n";
        if (quick) out << "quick run: criteria 5 and 6 at reduced size\n";
        out << "result: " << (all ? "ok" : "failed") << "\n";
      }
      return all ? 0 : 1;
    }

    InstanceBundle b = resolve(inst);
    Verdict v;
    if (cmd == validate) v = cmd_validate(b);
    else if (cmd == comatrix) v = cmd_comatrix(b);
    else if (cmd == galois) v = cmd_galois(b);
    else if (cmd == flat) v = cmd_flat(b, budget);
    else if (cmd == descent) v = cmd_descent(b, max_dim, budget);
    else v = cmd_dual(b, dual_dim);
    v.command = name;
    v.instance = b.name;
    if (timing) v.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (cmd == comatrix && !out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw InputError{"IOError", "cannot write " + out_path};
      f << v.document << "\n";
      v.facts["written"] = out_path;
      v.document.clear();
    }
    if (as_json) {
      out << verdict_json(v).dump(2) << "\n";
    } else if (cmd == comatrix && !v.document.empty()) {
      out << v.document << "\n";
      v.document.clear();
      render_text(v, err);
    } else {
      render_text(v, out);
    }
    return v.ok() ? 0 : 1;
  } catch (const InputError& e) {
    if (as_json) {
      json j = {{"format", "firmcor-report-1"}, {"command", name}, {"instance", inst},
                {"error", {{"kind", e.kind}, {"detail", e.detail}}}, {"result", "error"}, {"exit_code", 2}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << e.kind << ": " << e.detail << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace firmcor
