#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace subqfi::verify {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the whole property suite (state validation, fidelity bounds, route
/// equivalence, bound chains, bipartite identities, optimal-state attainment,
/// estimator sanity) at the given dimension. Properties that are only defined
/// at a fixed dimension (e.g. qubit coincidence) run at that dimension.
/// Deterministic under seed.
std::vector<PropertyResult> run_property_suite(int dim, int trials, std::uint64_t seed);

}  // namespace subqfi::verify
