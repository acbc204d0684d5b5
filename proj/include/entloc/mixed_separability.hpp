#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entloc/oracles.hpp"
#include "entloc/partitions.hpp"
#include "entloc/states.hpp"

namespace entloc {

/// What to do with a bipartition on which every oracle is inconclusive.
enum class InconclusivePolicy {
  TreatAsEntangled,           // keep scanning; the pair is reported as unresolved
  TreatAsSeparableHeuristic,  // if no bipartition is certified separable, split at
                              // the first inconclusive one, tagged Heuristic
};

enum class Confidence { Definite, Heuristic };

std::string_view to_string(InconclusivePolicy p);
std::string_view to_string(Confidence c);

/// Default per-side cap on the reduced dimension handed to the oracles.
inline constexpr std::size_t kReducedDimensionCap = std::size_t{1} << 12;

struct OracleEvidence {
  IndexBlock block;
  Bipartition bipartition;
  CombinedVerdict verdict;
  bool split = false;
};

struct SplitRecord {
  IndexBlock block;
  Bipartition bipartition;
  Confidence confidence = Confidence::Definite;
};

struct MixedLocalizeOptions {
  double tol = kDefaultSchmidtTolerance;
  InconclusivePolicy policy = InconclusivePolicy::TreatAsEntangled;
  int threads = 1;
  std::size_t reduced_dimension_cap = kReducedDimensionCap;
};

struct MixedReport {
  Partition partition;
  std::vector<SplitRecord> splits;
  std::vector<OracleEvidence> evidence;
  /// Bipartitions left inconclusive and not acted upon.
  std::vector<std::pair<IndexBlock, Bipartition>> unresolved;
  double tol = kDefaultSchmidtTolerance;
  InconclusivePolicy policy = InconclusivePolicy::TreatAsEntangled;
  bool fully_separable = false;
  bool fully_entangled = false;

  /// True when every split is Definite and nothing is unresolved.
  bool exact() const;
};

/// The block's state is the partial trace of rho onto the block, reordered
/// so the bipartition's left half is the A factor. Separability of that
/// reduced state does not by itself certify a product structure of rho as a
/// whole; the result is exact for inputs that are globally product-structured
/// and should be read through the confidence tags otherwise.
MixedReport localize_mixed(const DensityMatrix& rho, const OracleRegistry& registry,
                           const MixedLocalizeOptions& options = {});

/// Reduced state of `rho` on bp.left followed by bp.right, with its
/// (dA, dB) split.
struct BipartiteReduction {
  ComplexMatrix matrix;
  std::size_t dA = 0;
  std::size_t dB = 0;
};
BipartiteReduction reduce_to_bipartition(const DensityMatrix& rho, const Bipartition& bp);

/// One term of a blockwise product decomposition: weight and one density
/// matrix per block of the partition, in block order.
struct ProductTerm {
  double weight = 0.0;
  std::vector<DensityMatrix> blocks;
};

/// Frobenius distance between rho and sum_a w_a (x)_X rho^X_a with the
/// blocks placed back at their subsystem positions.
double decomposition_residual(const DensityMatrix& rho, const Partition& pi,
                              const std::vector<ProductTerm>& decomposition);

/// True iff the supplied decomposition reproduces rho within 1e-9
/// (Frobenius). Checks a witness; does not search for one.
bool check_pi_separable_constructed(const DensityMatrix& rho, const Partition& pi,
                                    const std::vector<ProductTerm>& decomposition);

}  // namespace entloc
