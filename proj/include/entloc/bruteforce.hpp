#pragma once

#include "entloc/partitions.hpp"
#include "entloc/states.hpp"

namespace entloc {

/// Largest system the exhaustive search accepts; B(8) = 4140.
inline constexpr int kBruteForceCap = 8;

/// Tr(rho_X^2) of the marginal of psi on `block`. Computed with a direct
/// index loop, independent of the reshape/SVD path.
double marginal_purity(const PureState& psi, const IndexBlock& block);

/// Finest partition whose every block has marginal purity >= 1 - tol.
/// Partitions are scanned by block count descending, then canonically;
/// a second passing partition of the same block count raises an Error since
/// the finest factorization of a pure state is unique.
Partition brute_finest_partition(const PureState& psi, double tol = 1e-8);

}  // namespace entloc
