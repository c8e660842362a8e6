#pragma once

#include <optional>
#include <vector>

#include "cansym/lie_algebra.hpp"
#include "cansym/vector_field.hpp"

namespace cansym {

/// Coordinates of vector fields over the (component, atom) basis spanned by
/// all of them together; one row per field.
RatMatrix field_coordinates(const std::vector<VectorField>& fields);

std::size_t field_rank(const std::vector<VectorField>& fields);

/// Coefficients c with sum c_i basis_i = target, if target lies in the span.
/// Requires the basis to be linearly independent.
std::optional<RatVector> express_in_span(const std::vector<VectorField>& basis,
                                         const VectorField& target);

/// Structure constants of the algebra spanned by independent fields, from
/// symbolic brackets. nullopt when some bracket leaves the span.
std::optional<LieAlgebra> structure_constants_from_fields(const std::vector<VectorField>& fields);

}  // namespace cansym
