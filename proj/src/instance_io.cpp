#include <fstream>
#include <map>
#include <sstream>

#include "firmcor/instances.hpp"
#include "json.hpp"

namespace firmcor {

using nlohmann::json;

namespace {

struct ParseFail {
  std::string where;
  std::string what;
};

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

json mats_json(const std::vector<Mat>& ms) {
  json out = json::array();
  for (auto& m : ms) out.push_back(mat_json(m));
  return out;
}

json algebra_json(const Algebra& a) {
  json mult = json::array();
  for (int i = 0; i < a.dim; ++i) {
    json row = json::array();
    for (int j = 0; j < a.dim; ++j) {
      json v = json::array();
      for (int k = 0; k < a.dim; ++k) v.push_back(a.c(i, j, k));
      row.push_back(v);
    }
    mult.push_back(row);
  }
  json out = {{"dim", a.dim}, {"mult", mult}, {"unital", a.unital()}, {"name", a.name}};
  if (a.unit) out["unit"] = *a.unit;
  return out;
}

json map_json(std::vector<std::string> dom, std::vector<std::string> cod, const Mat& m) {
  return {{"domain", dom}, {"codomain", cod}, {"matrix", mat_json(m)}};
}

// integer in [.., ..] reduced mod p
int entry(const json& j, int p, const std::string& where) {
  if (!j.is_number_integer()) throw ParseFail{where, "expected an integer"};
  return mod(j.get<long long>(), p);
}

const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseFail{where, "missing key \"" + key + "\""};
  return j.at(key);
}

Mat read_mat(const json& j, int p, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ParseFail{where, "expected " + std::to_string(rows) + " rows"};
  Mat m(p, rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& r = j[i];
    if (!r.is_array() || static_cast<int>(r.size()) != cols)
      throw ParseFail{where + "/" + std::to_string(i), "expected " + std::to_string(cols) + " entries"};
    for (int c = 0; c < cols; ++c) m.set(i, c, entry(r[c], p, where + "/" + std::to_string(i) + "/" + std::to_string(c)));
  }
  return m;
}

std::vector<Mat> read_mats(const json& j, int p, int count, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != count)
    throw ParseFail{where, "expected " + std::to_string(count) + " action matrices"};
  std::vector<Mat> out;
  for (int i = 0; i < count; ++i) out.push_back(read_mat(j[i], p, n, n, where + "/" + std::to_string(i)));
  return out;
}

int read_dim(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 4096)
    throw ParseFail{where, "expected a dimension"};
  return j.get<int>();
}

AlgPtr read_algebra(const json& j, int p, const std::string& where) {
  int n = read_dim(need(j, "dim", where), where + "/dim");
  const json& m = need(j, "mult", where);
  if (!m.is_array() || static_cast<int>(m.size()) != n) throw ParseFail{where + "/mult", "wrong size"};
  std::vector<int> mult(static_cast<size_t>(n) * n * n);
  for (int i = 0; i < n; ++i) {
    if (!m[i].is_array() || static_cast<int>(m[i].size()) != n) throw ParseFail{where + "/mult/" + std::to_string(i), "wrong size"};
    for (int k = 0; k < n; ++k) {
      const json& v = m[i][k];
      std::string w = where + "/mult/" + std::to_string(i) + "/" + std::to_string(k);
      if (!v.is_array() || static_cast<int>(v.size()) != n) throw ParseFail{w, "wrong size"};
      for (int l = 0; l < n; ++l) mult[(static_cast<size_t>(i) * n + k) * n + l] = entry(v[l], p, w);
    }
  }
  bool unital = need(j, "unital", where).is_boolean() && j.at("unital").get<bool>();
  std::optional<Vec> unit;
  if (unital) {
    const json& u = need(j, "unit", where);
    if (!u.is_array() || static_cast<int>(u.size()) != n) throw ParseFail{where + "/unit", "wrong size"};
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = entry(u[i], p, where + "/unit");
    unit = v;
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  return make_algebra(p, n, std::move(mult), unit, name);
}

std::string position_of(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string save_instance(const InstanceBundle& b) {
  const ComatrixData& d = b.data;
  json j;
  j["format"] = "firmcor-1";
  j["name"] = b.name;
  j["notes"] = b.notes;
  j["p"] = d.A->p;
  j["algebras"] = {{"A", algebra_json(*d.A)}, {"B", algebra_json(*d.B)}, {"R", algebra_json(*d.R)}};
  j["spaces"] = {{"Sigma", d.sigma.dim}, {"SigmaPrime", d.sigmap.dim}};
  j["bimodules"] = {
      {"Sigma", {{"left", "B"}, {"right", "A"}, {"left_action", mats_json(d.sigma.left)}, {"right_action", mats_json(d.sigma.right)}}},
      {"SigmaPrime",
       {{"left", "A"}, {"right", "B"}, {"left_action", mats_json(d.sigmap.left)}, {"right_action", mats_json(d.sigmap.right)}}}};
  j["maps"] = {{"mu", map_json({"SigmaPrime", "Sigma"}, {"A"}, d.mu)},
               {"iota", map_json({"R"}, {"Sigma", "SigmaPrime"}, d.iota)}};
  if (b.target) {
    const Coring& c = *b.target;
    j["spaces"]["C"] = c.dim();
    j["coring"] = {{"name", c.name},
                   {"carrier", {{"left_action", mats_json(c.C.left)}, {"right_action", mats_json(c.C.right)}}},
                   {"delta", map_json({"C"}, {"C", "C"}, c.CC.sec() * c.delta)},
                   {"eps", map_json({"C"}, {"A"}, c.eps)}};
    j["comodules"] = {{"Sigma", {{"coring", "C"}, {"rho", map_json({"Sigma"}, {"Sigma", "C"}, b.rho)}}}};
  }
  if (!b.annotations.empty()) j["annotations"] = b.annotations;
  return j.dump();
}

Result<InstanceBundle> parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return Failure{"ParseError", position_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what(),
                   {static_cast<int>(e.byte)}};
  }
  try {
    if (!j.is_object()) throw ParseFail{"/", "expected an object"};
    const json& fmt = need(j, "format", "");
    if (!fmt.is_string() || fmt.get<std::string>() != "firmcor-1") throw ParseFail{"/format", "expected \"firmcor-1\""};
    const json& pj = need(j, "p", "");
    if (!pj.is_number_integer()) throw ParseFail{"/p", "expected an integer"};
    long long pl = pj.get<long long>();
    if (pl < 2 || pl > 46337 || !is_prime(static_cast<int>(pl)))
      throw ParseFail{"/p", "p = " + std::to_string(pl) + " is not a prime"};
    const int p = static_cast<int>(pl);
    InstanceBundle b;
    b.name = need(j, "name", "").is_string() ? j["name"].get<std::string>() : throw ParseFail{"/name", "expected a string"};
    if (j.contains("notes") && j["notes"].is_string()) b.notes = j["notes"].get<std::string>();
    if (j.contains("annotations")) {
      const json& an = j["annotations"];
      if (!an.is_object()) throw ParseFail{"/annotations", "expected an object of strings"};
      for (auto it = an.begin(); it != an.end(); ++it) {
        if (!it.value().is_string()) throw ParseFail{"/annotations/" + it.key(), "expected a string"};
        b.annotations[it.key()] = it.value().get<std::string>();
      }
    }
    const json& algs = need(j, "algebras", "");
    std::map<std::string, AlgPtr> rings;
    for (const char* key : {"A", "B", "R"}) rings[key] = read_algebra(need(algs, key, "/algebras"), p, std::string("/algebras/") + key);
    const json& sp = need(j, "spaces", "");
    int dS = read_dim(need(sp, "Sigma", "/spaces"), "/spaces/Sigma");
    int dP = read_dim(need(sp, "SigmaPrime", "/spaces"), "/spaces/SigmaPrime");
    const json& bims = need(j, "bimodules", "");
    auto read_bim = [&](const std::string& key, int n, const std::string& l, const std::string& r, const std::string& name) {
      std::string w = "/bimodules/" + key;
      const json& bj = need(bims, key, "/bimodules");
      if (need(bj, "left", w) != l || need(bj, "right", w) != r)
        throw ParseFail{w, "expected left ring " + l + " and right ring " + r};
      AlgPtr lr = rings[l], rr = rings[r];
      return make_bimodule(name, lr, rr, read_mats(need(bj, "left_action", w), p, lr->dim, n, w + "/left_action"),
                           read_mats(need(bj, "right_action", w), p, rr->dim, n, w + "/right_action"));
    };
    Bimodule sigma = read_bim("Sigma", dS, "B", "A", "Σ");
    Bimodule sigmap = read_bim("SigmaPrime", dP, "A", "B", "Σ′");
    sigma.dim = dS;
    sigmap.dim = dP;
    const json& maps = need(j, "maps", "");
    const int dA = rings["A"]->dim, dR = rings["R"]->dim;
    Mat mu = read_mat(need(need(maps, "mu", "/maps"), "matrix", "/maps/mu"), p, dA, dP * dS, "/maps/mu/matrix");
    Mat iota = read_mat(need(need(maps, "iota", "/maps"), "matrix", "/maps/iota"), p, dS * dP, dR, "/maps/iota/matrix");
    b.data = ComatrixData{b.name, rings["A"], rings["B"], rings["R"], sigma, sigmap, mu, iota};
    if (j.contains("coring")) {
      const json& cj = j["coring"];
      int dC = read_dim(need(sp, "C", "/spaces"), "/spaces/C");
      const json& car = need(cj, "carrier", "/coring");
      AlgPtr a = rings["A"];
      Bimodule c = make_bimodule(cj.contains("name") && cj["name"].is_string() ? cj["name"].get<std::string>() : "C", a, a,
                                 read_mats(need(car, "left_action", "/coring/carrier"), p, dA, dC, "/coring/carrier/left_action"),
                                 read_mats(need(car, "right_action", "/coring/carrier"), p, dA, dC, "/coring/carrier/right_action"));
      c.dim = dC;
      Mat delta = read_mat(need(need(cj, "delta", "/coring"), "matrix", "/coring/delta"), p, dC * dC, dC, "/coring/delta/matrix");
      Mat eps = read_mat(need(need(cj, "eps", "/coring"), "matrix", "/coring/eps"), p, dA, dC, "/coring/eps/matrix");
      b.target = make_coring_ambient(c.name, c, delta, eps);
      const json& cm = need(need(j, "comodules", ""), "Sigma", "/comodules");
      b.rho = read_mat(need(need(cm, "rho", "/comodules/Sigma"), "matrix", "/comodules/Sigma/rho"), p, dS * dC, dS,
                       "/comodules/Sigma/rho/matrix");
    }
    return b;
  } catch (const ParseFail& f) {
    return Failure{"ParseError", f.where + ": " + f.what, {}};
  } catch (const json::exception& e) {
    return Failure{"ParseError", e.what(), {}};
  }
}

Result<InstanceBundle> load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) return Failure{"IOError", "cannot open " + path, {}};
  std::stringstream ss;
  ss << in.rdbuf();
  auto b = parse_instance(ss.str());
  if (!b) return b;
  Report rep = validate_instance(*b);
  if (!rep.ok()) return rep.as_failure("ValidationError");
  return b;
}

Result<std::string> canonicalize(const std::string& text) {
  auto b = parse_instance(text);
  if (!b) return b.error();
  return save_instance(*b);
}

}  // namespace firmcor
