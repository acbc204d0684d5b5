#include "entloc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entloc/error.hpp"

namespace entloc {

namespace {

constexpr double kSvdResidualBound = 1e-10;
// Residual verification is skipped above this many multiply-adds.
constexpr double kResidualCheckBudget = 1.5e8;

void require_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) throw Error("matrix contains NaN or Inf entries");
}

std::vector<std::size_t> positions_in(const IndexBlock& support, const IndexBlock& group) {
  std::vector<std::size_t> out;
  out.reserve(group.size());
  for (int s : group) {
    auto it = std::lower_bound(support.begin(), support.end(), s);
    if (it == support.end() || *it != s)
      throw Error("subsystem " + std::to_string(s) + " is not part of " + support.to_string());
    out.push_back(static_cast<std::size_t>(it - support.begin()));
  }
  return out;
}

void require_bipartition_of(const IndexBlock& support, const Bipartition& bp) {
  if (bp.parent() != support)
    throw Error("bipartition " + bp.to_string() + " does not split " + support.to_string());
}

}  // namespace

namespace {

SvdResult jacobi_svd(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double svd_residual(const ComplexMatrix& m, const SvdResult& f) {
  return (m - f.u * f.sigma.cast<Complex>().asDiagonal() * f.v.adjoint()).norm();
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
  require_finite(m);
  const auto small = std::min(m.rows(), m.cols());
  if (small == 0) throw Error("svd of an empty matrix");
  const double work = static_cast<double>(m.rows()) * static_cast<double>(m.cols()) *
                      static_cast<double>(small);
  const bool check = work <= kResidualCheckBudget;
  const double bound = kSvdResidualBound * std::max(m.norm(), 1e-300);

  SvdResult out;
  if (small <= 32) {
    out = jacobi_svd(m);
  } else {
    Eigen::BDCSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) throw Error("svd did not converge");
    out = {solver.matrixU(), solver.singularValues(), solver.matrixV()};
    // Eigen's divide-and-conquer solver occasionally returns a wrong
    // factorization for sparse, highly degenerate inputs; Jacobi does not.
    if (check && svd_residual(m, out) > bound) out = jacobi_svd(m);
  }
  if (check) {
    const double residual = svd_residual(m, out);
    if (residual > bound) {
      std::ostringstream msg;
      msg << "svd residual " << residual << " exceeds " << kSvdResidualBound << " * ||m||_F";
      throw Error(msg.str());
    }
  }
  return out;
}

ComplexMatrix reshape_bipartite(const ComplexVector& amplitudes, const SubsystemDims& dims,
                                const IndexBlock& support, const Bipartition& bp) {
  if (static_cast<std::size_t>(amplitudes.size()) != dims.total())
    throw Error("amplitude count " + std::to_string(amplitudes.size()) +
                " does not match dims " + dims.to_string());
  if (static_cast<int>(support.size()) != dims.count())
    throw Error("support " + support.to_string() + " does not match dims " + dims.to_string());
  require_bipartition_of(support, bp);
  const auto rows = group_offsets(dims.values(), positions_in(support, bp.left));
  const auto cols = group_offsets(dims.values(), positions_in(support, bp.right));
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          amplitudes(static_cast<Eigen::Index>(rows[r] + cols[c]));
  return m;
}

ComplexMatrix reshape_bipartite(const ComplexVector& amplitudes, const SubsystemDims& dims,
                                const Bipartition& bp) {
  return reshape_bipartite(amplitudes, dims, IndexBlock::range(dims.count()), bp);
}

ComplexVector unreshape_bipartite(const ComplexMatrix& m, const SubsystemDims& dims,
                                  const IndexBlock& support, const Bipartition& bp) {
  require_bipartition_of(support, bp);
  const auto rows = group_offsets(dims.values(), positions_in(support, bp.left));
  const auto cols = group_offsets(dims.values(), positions_in(support, bp.right));
  if (static_cast<std::size_t>(m.rows()) != rows.size() ||
      static_cast<std::size_t>(m.cols()) != cols.size())
    throw Error("matrix shape does not match the bipartition");
  ComplexVector out(static_cast<Eigen::Index>(dims.total()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r)
      out(static_cast<Eigen::Index>(rows[r] + cols[c])) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

SchmidtData schmidt_decompose(const ComplexVector& amplitudes, const SubsystemDims& dims,
                              const IndexBlock& support, const Bipartition& bp, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw Error("Schmidt tolerance must lie in (0, 1)");
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw Error("null state");
  if (std::abs(norm - 1.0) > 1e-6) throw Error("state is not normalized");

  auto dec = svd(reshape_bipartite(amplitudes, dims, support, bp));
  const double cut = tol * dec.sigma(0);
  int rank = 0;
  while (rank < dec.sigma.size() && dec.sigma(rank) > cut) ++rank;

  SchmidtData out;
  out.rank = rank;
  out.coefficients = dec.sigma.head(rank);
  out.left_vectors = dec.u.leftCols(rank);
  out.right_vectors = dec.v.leftCols(rank).conjugate();
  out.all_singular_values = std::move(dec.sigma);
  return out;
}

SchmidtData schmidt_decompose(const ComplexVector& amplitudes, const SubsystemDims& dims,
                              const Bipartition& bp, double tol) {
  return schmidt_decompose(amplitudes, dims, IndexBlock::range(dims.count()), bp, tol);
}

ComplexMatrix reduce_density(const ComplexMatrix& rho, const SubsystemDims& dims,
                             const std::vector<int>& order) {
  if (order.empty()) throw Error("partial trace must keep at least one subsystem");
  if (static_cast<std::size_t>(rho.rows()) != dims.total() || rho.rows() != rho.cols())
    throw Error("density matrix shape does not match dims " + dims.to_string());
  std::vector<bool> kept(static_cast<std::size_t>(dims.count()), false);
  std::vector<std::size_t> kept_positions;
  for (int s : order) {
    if (s < 1 || s > dims.count())
      throw Error("subsystem " + std::to_string(s) + " outside dims " + dims.to_string());
    auto p = static_cast<std::size_t>(s - 1);
    if (kept[p]) throw Error("subsystem " + std::to_string(s) + " listed twice");
    kept[p] = true;
    kept_positions.push_back(p);
  }
  std::vector<std::size_t> traced_positions;
  for (std::size_t p = 0; p < kept.size(); ++p)
    if (!kept[p]) traced_positions.push_back(p);

  const auto keep = group_offsets(dims.values(), kept_positions);
  const auto trace = group_offsets(dims.values(), traced_positions);
  const auto d = static_cast<Eigen::Index>(keep.size());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) {
      Complex sum{0.0, 0.0};
      for (std::size_t t : trace)
        sum += rho(static_cast<Eigen::Index>(keep[static_cast<std::size_t>(a)] + t),
                   static_cast<Eigen::Index>(keep[static_cast<std::size_t>(b)] + t));
      out(a, b) = sum;
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemDims& dims,
                            const IndexBlock& keep) {
  if (keep.size() == 0) throw Error("partial trace must keep at least one subsystem");
  return reduce_density(rho, dims, keep.members());
}

namespace {

void require_bipartite_shape(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  const auto d = static_cast<Eigen::Index>(dA * dB);
  if (dA == 0 || dB == 0 || rho.rows() != d || rho.cols() != d)
    throw Error("matrix of size " + std::to_string(rho.rows()) + "x" +
                std::to_string(rho.cols()) + " does not match " + std::to_string(dA) + "x" +
                std::to_string(dB) + " bipartite dims");
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  require_bipartite_shape(rho, dA, dB);
  ComplexMatrix out(rho.rows(), rho.cols());
  const auto nA = static_cast<Eigen::Index>(dA);
  const auto nB = static_cast<Eigen::Index>(dB);
  for (Eigen::Index i = 0; i < nA; ++i)
    for (Eigen::Index j = 0; j < nB; ++j)
      for (Eigen::Index k = 0; k < nA; ++k)
        for (Eigen::Index l = 0; l < nB; ++l) out(i * nB + l, k * nB + j) = rho(i * nB + j, k * nB + l);
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error("eigenvalues need a square matrix");
  require_finite(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance * scale)
    throw Error("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

ComplexMatrix realign(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  require_bipartite_shape(rho, dA, dB);
  const auto nA = static_cast<Eigen::Index>(dA);
  const auto nB = static_cast<Eigen::Index>(dB);
  ComplexMatrix out(nA * nA, nB * nB);
  for (Eigen::Index i = 0; i < nA; ++i)
    for (Eigen::Index j = 0; j < nB; ++j)
      for (Eigen::Index k = 0; k < nA; ++k)
        for (Eigen::Index l = 0; l < nB; ++l) out(i * nA + k, j * nB + l) = rho(i * nB + j, k * nB + l);
  return out;
}

double trace_norm(const ComplexMatrix& m) { return svd(m).sigma.sum(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexVector top_eigenvector(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  ComplexVector v = solver.eigenvectors().col(m.rows() - 1);
  return v / v.norm();
}

}  // namespace entloc
