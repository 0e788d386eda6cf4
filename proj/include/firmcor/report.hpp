#pragma once

#include <string>
#include <vector>

#include "firmcor/result.hpp"

namespace firmcor {

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
  std::vector<int> witness;
};

struct Report {
  std::vector<Check> checks;

  bool ok() const {
    for (auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  void pass(std::string name, std::string detail = {}) { checks.push_back({std::move(name), true, std::move(detail), {}}); }
  void fail(std::string name, std::string detail, std::vector<int> witness = {}) {
    checks.push_back({std::move(name), false, std::move(detail), std::move(witness)});
  }
  void add(std::string name, bool ok, std::string detail = {}, std::vector<int> witness = {}) {
    checks.push_back({std::move(name), ok, std::move(detail), std::move(witness)});
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (auto c : other.checks) {
      if (!prefix.empty()) c.name = prefix + "." + c.name;
      checks.push_back(std::move(c));
    }
  }
  const Check* first_failure() const {
    for (auto& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }
  Failure as_failure(const std::string& kind) const {
    auto* c = first_failure();
    if (!c) return Failure{kind, "", {}};
    return Failure{kind, c->name + ": " + c->detail, c->witness};
  }
};

}  // namespace firmcor
