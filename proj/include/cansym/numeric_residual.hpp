#pragma once

#include <cstdint>
#include <vector>

#include "cansym/determining.hpp"

namespace cansym {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultSamples = 50;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Uniform points in [-2, 2] for (t, x^1..x^n, w); deterministic in seed.
std::vector<EvalPoint> sample_points(const GeodesicSystem& s, std::size_t count,
                                     std::uint64_t seed);

/// max |r| of the second-prolongation symmetry condition, assembled in
/// floating point from the field's numerically evaluated derivatives at
/// sampled points and random velocities; no symbolic residuals involved.
/// Parallel over the points.
double numeric_residual(const VectorField& x, const GeodesicSystem& s,
                        std::size_t samples = kDefaultSamples,
                        std::uint64_t seed = kDefaultSeed);

/// Single-threaded reference for numeric_residual.
double numeric_residual_serial(const VectorField& x, const GeodesicSystem& s,
                               std::size_t samples = kDefaultSamples,
                               std::uint64_t seed = kDefaultSeed);

/// Evaluates a batch of expressions at a batch of points; out[p][e].
std::vector<std::vector<double>> evaluate_batch(const std::vector<ScalarExpr>& exprs,
                                                const std::vector<EvalPoint>& points);
std::vector<std::vector<double>> evaluate_batch_serial(const std::vector<ScalarExpr>& exprs,
                                                       const std::vector<EvalPoint>& points);

}  // namespace cansym
