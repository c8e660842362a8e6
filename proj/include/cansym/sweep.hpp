#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cansym/rat_matrix.hpp"

namespace cansym {

using MatrixBuilder = std::function<RatMatrix(const ParamMap&)>;

struct SweepPoint {
  ParamMap params;
  RatMatrix a;
  bool singular = false;
  /// Set for nonsingular points.
  std::optional<std::size_t> dimension;
  std::size_t commutant_dim = 0;
  std::size_t anticommutant_dim = 0;
  bool derogatory = false;
};

struct SpecialValueReport {
  /// In grid order.
  std::vector<SweepPoint> points;
  /// Minimum dimension over the nonsingular grid points.
  std::optional<std::size_t> generic_dimension;
  /// Indices into points whose dimension exceeds the generic value.
  std::vector<std::size_t> jumps;
  std::size_t singular_count() const;
};

/// Evaluates every grid point (in parallel) and merges in grid order.
/// Singular points are reported and skipped. Throws InputError on an empty
/// grid; builder exceptions propagate.
SpecialValueReport sweep(const MatrixBuilder& build, const std::vector<ParamMap>& grid);
SpecialValueReport sweep_serial(const MatrixBuilder& build, const std::vector<ParamMap>& grid);

/// Cartesian product of per-parameter value lists, first name varying slowest.
std::vector<ParamMap> grid_product(const std::vector<std::pair<std::string, std::vector<Rational>>>& axes);

}  // namespace cansym
