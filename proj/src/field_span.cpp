#include "cansym/field_span.hpp"

#include <map>
#include <utility>

namespace cansym {

namespace {

using Key = std::pair<int, Atom>;

const ScalarExpr& component_at(const VectorField& f, int c) {
  if (c == 0) return f.xi;
  if (c == f.n() + 1) return f.etaw;
  return f.eta[static_cast<std::size_t>(c - 1)];
}

std::map<Key, std::size_t> index_atoms(const std::vector<VectorField>& fields) {
  std::map<Key, std::size_t> index;
  for (const auto& f : fields)
    for (int c = 0; c <= f.n() + 1; ++c)
      for (const auto& [atom, coeff] : component_at(f, c).terms()) index.try_emplace({c, atom}, 0);
  std::size_t k = 0;
  for (auto& [key, pos] : index) pos = k++;
  return index;
}

RatMatrix coordinates(const std::vector<VectorField>& fields, const std::map<Key, std::size_t>& index) {
  RatMatrix m(fields.size(), index.size());
  for (std::size_t r = 0; r < fields.size(); ++r)
    for (int c = 0; c <= fields[r].n() + 1; ++c)
      for (const auto& [atom, coeff] : component_at(fields[r], c).terms())
        m(r, index.at({c, atom})) = coeff;
  return m;
}

}  // namespace

RatMatrix field_coordinates(const std::vector<VectorField>& fields) {
  return coordinates(fields, index_atoms(fields));
}

std::size_t field_rank(const std::vector<VectorField>& fields) {
  if (fields.empty()) return 0;
  return rank(field_coordinates(fields));
}

std::optional<RatVector> express_in_span(const std::vector<VectorField>& basis,
                                         const VectorField& target) {
  std::vector<VectorField> all = basis;
  all.push_back(target);
  const RatMatrix m = field_coordinates(all);
  // Columns are basis fields: solve M_basis^T c = target coordinates.
  RatMatrix sys(m.cols(), basis.size());
  RatVector rhs(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < basis.size(); ++i) sys(j, i) = m(i, j);
    rhs[j] = m(basis.size(), j);
  }
  return solve_linear(sys, rhs);
}

std::optional<LieAlgebra> structure_constants_from_fields(const std::vector<VectorField>& fields) {
  const std::size_t d = fields.size();
  std::vector<VectorField> brackets;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      brackets.push_back(lie_bracket(fields[i], fields[j]));
      pairs.emplace_back(i, j);
    }
  // One elimination for all brackets: [basis^T | bracket columns].
  std::vector<VectorField> all = fields;
  all.insert(all.end(), brackets.begin(), brackets.end());
  const auto index = index_atoms(all);
  const RatMatrix m = coordinates(all, index);
  RatMatrix aug(m.cols(), d + brackets.size());
  for (std::size_t r = 0; r < m.cols(); ++r)
    for (std::size_t c = 0; c < all.size(); ++c) aug(r, c) = m(c, r);
  const auto red = rref(aug);
  // The first d columns must all be pivots and no bracket column may be.
  if (red.rank > d) return std::nullopt;
  for (std::size_t k = 0; k < d; ++k)
    if (k >= red.pivots.size() || red.pivots[k] != k)
      throw InputError("structure_constants_from_fields: fields are linearly dependent");
  LieAlgebra l(d);
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    RatVector coeffs(d);
    for (std::size_t k = 0; k < d; ++k) coeffs[k] = red.reduced(k, d + b);
    l.set_bracket(pairs[b].first, pairs[b].second, coeffs);
  }
  return l;
}

}  // namespace cansym
