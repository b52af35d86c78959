#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zdim/set_core.hpp"

namespace zdim {

enum class PointwiseOp { sum, product };
enum class AffineMode { translate, dilate };

// All a op b <= bound with a in A, b in B, as a finite set.
IntegerSet pointwise(const IntegerSet& a, const IntegerSet& b, PointwiseOp op, std::uint64_t bound,
                     std::uint64_t budget = default_budget());

// Pairs (a, b) with Euclidean norm at most `radius`. When both factors carry
// exact counts the result counts norms analytically, without enumeration.
LatticePointSet cartesian(const IntegerSet& a, const IntegerSet& b, std::uint64_t radius);

IntegerSet affine(const IntegerSet& a, std::uint64_t k, AffineMode mode);

IntegerSet unite(const IntegerSet& a, const IntegerSet& b);

struct Component {
  std::size_t id = 0;
  std::size_t size = 0;
  std::vector<std::int64_t> min_element;  // lexicographic
  std::vector<std::int64_t> max_element;
};

// Maximal r-connected components (steps of Euclidean length <= r), ordered by
// their least element.
std::vector<Component> bounded_components(const std::vector<std::uint64_t>& elements, std::uint64_t r);
std::vector<Component> bounded_components(const LatticePointSet& points, std::uint64_t r,
                                          std::uint64_t budget = default_budget());

void write_components_csv(std::ostream& out, const std::vector<Component>& comps);

}  // namespace zdim
