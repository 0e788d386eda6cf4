#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "firmcor/instances.hpp"
#include "json.hpp"

using namespace firmcor;
using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::vector<std::filesystem::path> sample_files() {
  std::vector<std::filesystem::path> out;
  for (auto& e : std::filesystem::directory_iterator(std::filesystem::path(FIRMCOR_SOURCE_DIR) / "instances"))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("bundled instances: names, dimensions, validation") {
  auto all = bundled();
  CHECK(all.size() >= 5);
  std::vector<std::string> names;
  for (auto& b : all) {
    names.push_back(b.name);
    Report r = validate_instance(b);
    CHECK_MESSAGE(r.ok(), b.name);
  }
  for (const char* n : {"trivial", "sweedler-f4-f2", "projection-f2xf2", "dual-basis-matrix", "corner-idempotents"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  auto sw = must(find_bundled("sweedler-f4-f2"));
  CHECK(must(build_comatrix(sw.data)).coring.dim() == 4);
  auto tr = must(find_bundled("trivial"));
  CHECK(tr.data.A->dim == 1);
  CHECK(tr.data.B->dim == 1);
  CHECK(tr.data.R->dim == 1);
  CHECK(tr.data.sigma.dim == 1);
  CHECK(tr.data.sigmap.dim == 1);
  CHECK(must(build_comatrix(tr.data)).coring.dim() == 1);
  CHECK_FALSE(find_bundled("no-such-thing").ok());
}

TEST_CASE("save, parse, save is byte-identical for every bundled instance") {
  auto all = bundled();
  all.push_back(corner_against_trivial());
  for (auto& b : all) {
    INFO(b.name);
    std::string s = save_instance(b);
    auto back = parse_instance(s);
    REQUIRE(back.ok());
    CHECK(save_instance(*back) == s);
    CHECK(validate_instance(*back).ok());
    auto c = canonicalize(s);
    REQUIRE(c.ok());
    CHECK(*c == s);
  }
}

TEST_CASE("canonicalization sorts keys, strips whitespace, reduces mod p, and is idempotent") {
  std::string s = save_instance(must(find_bundled("sweedler-f4-f2")));
  json j = json::parse(s);
  // shift one entry by p and pretty-print with a different key order
  j["maps"]["mu"]["matrix"][0][0] = j["maps"]["mu"]["matrix"][0][0].get<int>() + 2;
  std::string messy = j.dump(3);
  auto once = canonicalize(messy);
  REQUIRE(once.ok());
  CHECK(*once == s);
  auto twice = canonicalize(*once);
  REQUIRE(twice.ok());
  CHECK(*twice == *once);
}

TEST_CASE("annotations survive the round trip") {
  auto b = must(find_bundled("trivial"));
  b.annotations["/p"] = "the prime";
  std::string s = save_instance(b);
  auto back = must(parse_instance(s));
  CHECK(back.annotations.at("/p") == "the prime");
  CHECK(save_instance(back) == s);
}

TEST_CASE("p = 4 is a parse error") {
  json j = json::parse(save_instance(must(find_bundled("trivial"))));
  j["p"] = 4;
  auto r = parse_instance(j.dump());
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == "ParseError");
  CHECK(r.error().detail.find("/p") != std::string::npos);
  auto path = write_temp("firmcor-p4.json", j.dump());
  auto l = load_instance(path.string());
  REQUIRE_FALSE(l.ok());
  CHECK(l.error().kind == "ParseError");
}

TEST_CASE("malformed JSON reports line and column") {
  auto r = parse_instance("{\n  \"format\": \"firmcor-1\",\n  \"p\": 2,,\n}");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == "ParseError");
  CHECK(r.error().detail.find("line 3") != std::string::npos);
}

TEST_CASE("missing and mistyped keys are parse errors with a location") {
  json j = json::parse(save_instance(must(find_bundled("trivial"))));
  j.erase("maps");
  auto r = parse_instance(j.dump());
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().detail.find("maps") != std::string::npos);
  json k = json::parse(save_instance(must(find_bundled("trivial"))));
  k["algebras"]["A"]["mult"][0][0][0] = "one";
  auto s = parse_instance(k.dump());
  REQUIRE_FALSE(s.ok());
  CHECK(s.error().detail.find("/algebras/A/mult/0/0") != std::string::npos);
  json f = json::parse(save_instance(must(find_bundled("trivial"))));
  f["format"] = "firmcor-2";
  CHECK_FALSE(parse_instance(f.dump()).ok());
}

TEST_CASE("non-associative multiplication is a validation error naming the triple") {
  // A = F2×F2 from the projection instance; break e0·e0 = e0 into e0·e0 = e1
  json j = json::parse(save_instance(must(find_bundled("projection-f2xf2"))));
  auto& mult = j["algebras"]["B"]["mult"];
  REQUIRE(mult.size() == 2);
  mult[0][0] = json::array({0, 1});
  auto path = write_temp("firmcor-nonassoc.json", j.dump());
  auto r = load_instance(path.string());
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == "ValidationError");
  REQUIRE(r.error().witness.size() == 3);
  // the reported triple really fails associativity
  auto parsed = must(parse_instance(j.dump()));
  const Algebra& B = *parsed.data.B;
  auto w = r.error().witness;
  Vec a = unit_vec(2, w[0]), b = unit_vec(2, w[1]), c = unit_vec(2, w[2]);
  CHECK(B.mul(B.mul(a, b), c) != B.mul(a, B.mul(b, c)));
  CHECK(r.error().detail.find("associativity") != std::string::npos);
}

TEST_CASE("missing file is an IO error") {
  auto r = load_instance("/nonexistent/firmcor.json");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == "IOError");
}

TEST_CASE("sample files load, validate and are already canonical") {
  auto files = sample_files();
  CHECK(files.size() >= 3);
  for (auto& f : files) {
    INFO(f.string());
    auto b = load_instance(f.string());
    REQUIRE(b.ok());
    CHECK_FALSE(b->annotations.empty());
    std::string raw = read_file(f);
    auto c = canonicalize(raw);
    REQUIRE(c.ok());
    CHECK(*c == raw);
  }
}
