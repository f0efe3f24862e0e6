#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qnet {

using IntVector = std::vector<std::int64_t>;

/// Sublattice of Z^dim spanned by a finite list of generators, kept in row
/// Hermite normal form. All arithmetic is exact; overflow throws.
class IntegerLattice {
  public:
    IntegerLattice(std::vector<IntVector> generators, std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<IntVector>& basis() const { return basis_; }

    bool contains(const IntVector& v) const;
    /// Integer coefficients c with sum_i c[i] * generators[i] == v.
    std::optional<IntVector> coefficients(const IntVector& v) const;

  private:
    std::size_t dim_;
    std::size_t count_;
    std::vector<IntVector> basis_;
    std::vector<std::size_t> pivots_;
    // basis_[r] == sum_j transform_[r][j] * generators[j]
    std::vector<IntVector> transform_;
};

} // namespace qnet
