#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "entloc/partitions.hpp"
#include "entloc/states.hpp"

namespace entloc {

/// Result of a Schmidt-rank test across one bipartition.
struct ProductTest {
  bool split = false;
  int schmidt_rank = 0;
  /// Top Schmidt pair, normalized; only meaningful when `split`.
  PureState left;
  PureState right;
};

/// Splits psi across `bp` iff its Schmidt rank there is 1.
ProductTest is_product_across(const PureState& psi, const Bipartition& bp,
                              double tol = kDefaultSchmidtTolerance);

struct SchmidtEvidence {
  IndexBlock block;
  Bipartition bipartition;
  int schmidt_rank = 0;
  bool split = false;
};

struct BlockFactor {
  IndexBlock block;
  PureState state;
};

struct LocalizeOptions {
  double tol = kDefaultSchmidtTolerance;
  int threads = 1;
};

struct SeparabilityReport {
  Partition partition;
  /// One factor per block, in the partition's block order.
  std::vector<BlockFactor> factors;
  /// Every committed Schmidt test, in worklist order.
  std::vector<SchmidtEvidence> evidence;
  double tol = kDefaultSchmidtTolerance;
  bool fully_separable = false;
  bool fully_entangled = false;

  std::size_t schmidt_tests() const { return evidence.size(); }
  /// Sum of 2^{m-1}-1 over every scanned block of size m.
  std::uint64_t schmidt_test_bound() const;
};

/// Finest partition under which psi factorizes, found with Schmidt tests over
/// bipartitions only.
SeparabilityReport localize(const PureState& psi, const LocalizeOptions& options = {});

/// Tensor product of the report's factors, reordered to subsystems 1..n.
PureState rebuild_state(const SeparabilityReport& report);

/// |<a|b>|
double overlap_magnitude(const PureState& a, const PureState& b);

}  // namespace entloc
