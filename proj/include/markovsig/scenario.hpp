#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "markovsig/design.hpp"
#include "markovsig/geometry.hpp"
#include "markovsig/measure.hpp"
#include "markovsig/response.hpp"

namespace markovsig {

struct DesignSpec {
  DesignMode mode = DesignMode::unit;
  int n = 0;
  std::optional<cplx> z0;
  std::optional<cplx> omega0;                // z0 = z(omega0) when z0 is absent
  std::vector<cplx> zero_factor;             // monic s, ascending coefficients
};

struct BoundsCase {
  std::string label;
  std::vector<double> moments;
  bool a0_known = true;
};

struct VerifySettings {
  int measures = 10000;
  int max_atoms = 8;
  int operator_seeds = 50;
  int operator_dim = 8;
};

struct RegionSettings {
  std::optional<cplx> z0;
  std::optional<cplx> omega0;
  double r = 1.0;
  RegionBox box;
  std::vector<cplx> probes;
};

/// Everything a command needs, parsed and validated.
struct Scenario {
  std::string name;
  SystemModel model;
  std::vector<cplx> frequencies;
  DesignSpec design;
  std::optional<DiscreteMeasure> measure;
  double theta = 0.0;
  std::vector<BoundsCase> bounds;
  std::optional<TimeGrid> time;
  std::uint64_t seed = 0;
  int grid_nodes = kDefaultGridNodes;
  VerifySettings verify;
  std::optional<RegionSettings> region;
};

/// Parse scenario JSON text. Validation failures throw Error whose message
/// starts with the path of the offending field, e.g. "frequencies[1]: ...".
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// The design's target point: design.z0, or z(design.omega0).
std::optional<cplx> resolve_z0(const Scenario& s);

/// Build the design the scenario describes.
SignalDesign build_design(const Scenario& s);

/// {"atoms": [...], "weights": [...]}
std::string measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const std::string& text);

}  // namespace markovsig
