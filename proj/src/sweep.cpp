#include "cansym/sweep.hpp"

#include <exception>

#include "cansym/solver.hpp"

namespace cansym {

std::size_t SpecialValueReport::singular_count() const {
  std::size_t c = 0;
  for (const auto& p : points) c += p.singular;
  return c;
}

namespace {

SweepPoint evaluate(const MatrixBuilder& build, const ParamMap& params) {
  SweepPoint pt;
  pt.params = params;
  pt.a = build(params);
  const MatrixReport m = classify_matrix(pt.a);
  pt.derogatory = m.derogatory;
  if (!m.nonsingular) {
    pt.singular = true;
    return pt;
  }
  // Only the dimension is needed, which the operator nullspaces determine.
  pt.commutant_dim = commutant_pairs(pt.a).dimension;
  pt.anticommutant_dim = anticommutant(pt.a).dimension;
  pt.dimension = 4 + 2 * pt.a.rows() + pt.commutant_dim + pt.anticommutant_dim;
  return pt;
}

SpecialValueReport summarize(std::vector<SweepPoint> points) {
  SpecialValueReport r;
  r.points = std::move(points);
  for (const auto& p : r.points)
    if (p.dimension && (!r.generic_dimension || *p.dimension < *r.generic_dimension))
      r.generic_dimension = p.dimension;
  for (std::size_t i = 0; i < r.points.size(); ++i)
    if (r.points[i].dimension && *r.points[i].dimension > *r.generic_dimension) r.jumps.push_back(i);
  return r;
}

}  // namespace

SpecialValueReport sweep(const MatrixBuilder& build, const std::vector<ParamMap>& grid) {
  if (grid.empty()) throw InputError("sweep: empty parameter grid");
  std::vector<SweepPoint> points(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      points[k] = evaluate(build, grid[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return summarize(std::move(points));
}

SpecialValueReport sweep_serial(const MatrixBuilder& build, const std::vector<ParamMap>& grid) {
  if (grid.empty()) throw InputError("sweep: empty parameter grid");
  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  for (const auto& g : grid) points.push_back(evaluate(build, g));
  return summarize(std::move(points));
}

std::vector<ParamMap> grid_product(
    const std::vector<std::pair<std::string, std::vector<Rational>>>& axes) {
  std::vector<ParamMap> out{ParamMap{}};
  for (const auto& [name, values] : axes) {
    if (values.empty()) throw InputError("grid axis '" + name + "' has no values");
    std::vector<ParamMap> next;
    for (const auto& partial : out)
      for (const auto& v : values) {
        ParamMap m = partial;
        m[name] = v;
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace cansym
