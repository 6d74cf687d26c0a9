#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lindstrom {

// Outcome of an exhaustive axiom check: how many instances were examined
// and a description of each one that failed.
struct AxiomReport {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) violations.push_back(what);
  }
};

}  // namespace lindstrom
