#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dkron {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

// Runs the full release gate. Every check is deterministic: seeds and
// tolerances are pinned inside.
std::vector<CriterionResult> run_acceptance();

// Prints one line per criterion to `out`; true when everything passed.
bool report_acceptance(std::ostream& out);

}  // namespace dkron
