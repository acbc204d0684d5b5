#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "entloc/dims.hpp"
#include "entloc/partitions.hpp"

namespace entloc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default relative Schmidt-rank cut: sigma_i counts iff sigma_i > tol * sigma_1.
inline constexpr double kDefaultSchmidtTolerance = 1e-8;
/// Absolute tolerance for Hermiticity / trace / PSD validation.
inline constexpr double kStateTolerance = 1e-10;

struct SvdResult {
  ComplexMatrix u;      // rows x r, orthonormal columns
  RealVector sigma;     // r = min(rows, cols), descending
  ComplexMatrix v;      // cols x r, orthonormal columns
};

/// Thin SVD with m = U diag(sigma) V^dagger. Throws if the entries are not
/// finite or the reconstruction residual exceeds 1e-10 ||m||_F.
SvdResult svd(const ComplexMatrix& m);

/// Matrix of amplitudes with rows indexed by the `bp.left` subsystems and
/// columns by `bp.right`, both big-endian in ascending subsystem order.
///
/// `support` lists the global subsystem indices that the vector's `dims`
/// describe (ascending); `bp` must partition exactly that set.
ComplexMatrix reshape_bipartite(const ComplexVector& amplitudes, const SubsystemDims& dims,
                                const IndexBlock& support, const Bipartition& bp);
/// Same with support {1..n}.
ComplexMatrix reshape_bipartite(const ComplexVector& amplitudes, const SubsystemDims& dims,
                                const Bipartition& bp);

/// Inverse of reshape_bipartite.
ComplexVector unreshape_bipartite(const ComplexMatrix& m, const SubsystemDims& dims,
                                  const IndexBlock& support, const Bipartition& bp);

struct SchmidtData {
  int rank = 0;
  RealVector coefficients;     // descending, all above the relative cut
  ComplexMatrix left_vectors;  // d_left x rank
  ComplexMatrix right_vectors; // d_right x rank
  /// Every singular value, including those below the cut.
  RealVector all_singular_values;
};

/// Schmidt decomposition psi = sum_i lambda_i left_i (x) right_i across `bp`.
/// Throws "null state" for a zero vector and rejects tol outside (0, 1).
SchmidtData schmidt_decompose(const ComplexVector& amplitudes, const SubsystemDims& dims,
                              const IndexBlock& support, const Bipartition& bp,
                              double tol = kDefaultSchmidtTolerance);
SchmidtData schmidt_decompose(const ComplexVector& amplitudes, const SubsystemDims& dims,
                              const Bipartition& bp, double tol = kDefaultSchmidtTolerance);

/// Reduced matrix on the subsystems in `order` (1-based), traced over the
/// rest. The result's basis is big-endian over `order` as listed, so a
/// non-ascending order also permutes the kept factors.
ComplexMatrix reduce_density(const ComplexMatrix& rho, const SubsystemDims& dims,
                             const std::vector<int>& order);

/// Partial trace keeping `keep` in ascending order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemDims& dims,
                            const IndexBlock& keep);

/// Transposes the B factor of an A-major (dA*dB) x (dA*dB) matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dA, std::size_t dB);

/// Ascending spectrum of a Hermitian matrix; throws if m is not Hermitian
/// within 1e-10 (scaled by max(1, max |m_ij|)).
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Realignment R[(i,k),(j,l)] = rho[(i,j),(k,l)], shape dA^2 x dB^2.
ComplexMatrix realign(const ComplexMatrix& rho, std::size_t dA, std::size_t dB);

double trace_norm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Normalized eigenvector of the largest eigenvalue of a Hermitian matrix.
ComplexVector top_eigenvector(const ComplexMatrix& m);

}  // namespace entloc
