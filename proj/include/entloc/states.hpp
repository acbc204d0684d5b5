#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "entloc/dims.hpp"
#include "entloc/linalg.hpp"

namespace entloc {

/// Whether constructors check the physical invariants (norm, trace, PSD).
enum class Validation { Check, Skip };

/// Normalized amplitude vector over a tensor-product space.
class PureState {
 public:
  PureState() = default;
  PureState(SubsystemDims dims, ComplexVector amplitudes, Validation v = Validation::Check);

  const SubsystemDims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  int party_count() const { return dims_.count(); }

 private:
  SubsystemDims dims_;
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a tensor-product
/// space (all checks at 1e-10 absolute).
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(SubsystemDims dims, ComplexMatrix matrix, Validation v = Validation::Check);

  const SubsystemDims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  int party_count() const { return dims_.count(); }

 private:
  SubsystemDims dims_;
  ComplexMatrix matrix_;
};

/// Basis state with one local digit per subsystem.
PureState make_basis(const SubsystemDims& dims, const std::vector<int>& digits);

/// a (x) b; b's subsystems follow a's.
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// (1/sqrt d) sum_j |j...j> on n subsystems of dimension d.
PureState make_ghz(int n, int d = 2);
/// (1/sqrt n) sum of one-hot qubit basis states.
PureState make_w(int n);
/// (|00> + |11>) / sqrt 2
PureState make_bell();

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes from
/// mt19937_64 through Box-Muller, then normalized.
PureState random_pure(const SubsystemDims& dims, std::uint64_t seed);

/// p |Psi-><Psi-| + (1-p)/4 I on two qubits.
DensityMatrix werner_2qubit(double p);

DensityMatrix density_from_pure(const PureState& psi);

/// Convex combination; weights must be non-negative and sum to 1 within 1e-12.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms);

/// Reorders subsystems: new subsystem j+1 is old subsystem perm[j] (1-based).
PureState permute_subsystems(const PureState& psi, const std::vector<int>& perm);
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm);

/// Tr(rho^2) of a matrix.
double purity(const ComplexMatrix& rho);

}  // namespace entloc
