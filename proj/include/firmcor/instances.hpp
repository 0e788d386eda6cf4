#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "firmcor/comatrix.hpp"

namespace firmcor {

struct InstanceBundle {
  std::string name;
  std::string notes;
  ComatrixData data;
  // target coring with Σ as right comodule; absent means Σ′⊗_RΣ itself
  std::optional<Coring> target;
  Mat rho;  // Σ -> Σ ⊗_K C on the ambient, only with a target
  // free-text remarks keyed by a JSON pointer into the file; kept on save
  std::map<std::string, std::string> annotations;
};

std::vector<InstanceBundle> bundled();
Result<InstanceBundle> find_bundled(const std::string& name);

// corner ring instance measured against the trivial coring: T = M3, so R is
// not a left ideal of T
InstanceBundle corner_against_trivial();

// full validation: algebras, bimodules, comatrix construction, target coaction
Report validate_instance(const InstanceBundle& b);

// firmcor-1 files
Result<InstanceBundle> load_instance(const std::string& path);
Result<InstanceBundle> parse_instance(const std::string& text);
std::string save_instance(const InstanceBundle& b);  // canonical JSON text
Result<std::string> canonicalize(const std::string& text);

}  // namespace firmcor
