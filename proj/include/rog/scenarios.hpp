#ifndef ROG_SCENARIOS_HPP
#define ROG_SCENARIOS_HPP

#include <string>
#include <vector>

#include "rog/cone.hpp"

namespace rog {

// Fixed scenario bundle behind the `paper-examples` command: the coequalizer
// that the positive-cone functor fails to preserve, the group-cone object
// tests with the non-strong point, the flip and rational-scaling split
// extensions, and the half-plane family of compatible cones on Z x Z.
struct ScenarioResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<ScenarioResult> run_scenario_bundle(const SearchBudget& budget = {});

}  // namespace rog

#endif
