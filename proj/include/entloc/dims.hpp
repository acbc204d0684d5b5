#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "entloc/partitions.hpp"

namespace entloc {

/// Default bound on the total Hilbert dimension, 2^25.
inline constexpr std::size_t kHilbertDimensionCap = std::size_t{1} << 25;

/// Ordered local dimensions (k_1, ..., k_n) of a tensor-product space.
/// Subsystem 1 is the most significant digit of the flat (big-endian,
/// mixed-radix) basis index.
class SubsystemDims {
 public:
  SubsystemDims() = default;
  explicit SubsystemDims(std::vector<int> dims, std::size_t cap = kHilbertDimensionCap);
  SubsystemDims(std::initializer_list<int> dims) : SubsystemDims(std::vector<int>(dims)) {}

  const std::vector<int>& values() const { return dims_; }
  int count() const { return static_cast<int>(dims_.size()); }
  /// Local dimension of 1-based subsystem `index`.
  int local(int index) const { return dims_.at(static_cast<std::size_t>(index - 1)); }
  std::size_t total() const { return total_; }
  /// Product of the local dimensions of the given 1-based subsystems.
  std::size_t total_of(const IndexBlock& block) const;

  /// Dims of the subsystems in `block`, ascending.
  SubsystemDims restrict_to(const IndexBlock& block) const;
  /// Concatenation (this first).
  SubsystemDims concat(const SubsystemDims& other) const;

  std::string to_string() const;

  friend bool operator==(const SubsystemDims& a, const SubsystemDims& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  std::size_t total_ = 1;
};

/// Flat offsets contributed by the listed 0-based subsystem positions, in
/// big-endian order over `positions` (first listed = most significant).
/// Entry r is the global offset of the r-th joint basis state of that group.
std::vector<std::size_t> group_offsets(const std::vector<int>& dims,
                                       const std::vector<std::size_t>& positions);

}  // namespace entloc
