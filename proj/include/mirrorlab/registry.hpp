#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirrorlab/families.hpp"
#include "mirrorlab/optimizer_config.hpp"

namespace mirrorlab {

// String-addressable family constructors for the CLI and for sweeps over the
// whole catalog.
struct FamilyRequest {
  std::string id;
  std::map<std::string, double> params;
};

std::vector<std::string> family_ids();

// Build the requested witness. upb-tiles and edge run the optimizer to get
// their eps bounds, so the config matters for those two.
WitnessRecord make_family(const FamilyRequest& req, const OptimizerConfig& cfg = {});

// Closed-form product-state supremum when the family has one at the given
// parameters; nullopt otherwise.
std::optional<double> expected_mu(const FamilyRequest& req);

// Sweepable parameter, when the family has a one-parameter slice.
std::optional<std::string> sweep_parameter(const std::string& id);

// One representative instance per family id (used by the whole-catalog tests).
std::vector<FamilyRequest> registry_defaults();

}  // namespace mirrorlab
