#include "entloc/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "entloc/error.hpp"

namespace entloc {

namespace {

constexpr double kWeightTolerance = 1e-12;

std::vector<std::size_t> permutation_positions(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) throw Error("permutation length does not match party count");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::size_t> out;
  for (int p : perm) {
    if (p < 1 || p > n || seen[static_cast<std::size_t>(p - 1)])
      throw Error("invalid subsystem permutation");
    seen[static_cast<std::size_t>(p - 1)] = true;
    out.push_back(static_cast<std::size_t>(p - 1));
  }
  return out;
}

SubsystemDims permuted_dims(const SubsystemDims& dims, const std::vector<int>& perm) {
  std::vector<int> out;
  for (int p : perm) out.push_back(dims.local(p));
  return SubsystemDims(std::move(out));
}

}  // namespace

PureState::PureState(SubsystemDims dims, ComplexVector amplitudes, Validation v)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != dims_.total())
    throw Error("pure state has " + std::to_string(amplitudes_.size()) +
                " amplitudes but dims " + dims_.to_string() + " need " +
                std::to_string(dims_.total()));
  if (!amplitudes_.allFinite()) throw Error("pure state has non-finite amplitudes");
  if (v == Validation::Check && std::abs(amplitudes_.norm() - 1.0) > kStateTolerance) {
    std::ostringstream msg;
    msg << "pure state is not normalized (norm " << amplitudes_.norm() << ")";
    throw Error(msg.str());
  }
}

DensityMatrix::DensityMatrix(SubsystemDims dims, ComplexMatrix matrix, Validation v)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(dims_.total());
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw Error("density matrix shape does not match dims " + dims_.to_string());
  if (!matrix_.allFinite()) throw Error("density matrix has non-finite entries");
  if (v == Validation::Skip) return;
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance)
    throw Error("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > kStateTolerance)
    throw Error("density matrix does not have unit trace");
  if (hermitian_eigenvalues(matrix_)(0) < -kStateTolerance)
    throw Error("density matrix is not positive semidefinite");
}

PureState make_basis(const SubsystemDims& dims, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) != dims.count())
    throw Error("basis state needs one digit per subsystem");
  std::size_t position = 0;
  for (int i = 1; i <= dims.count(); ++i) {
    int digit = digits[static_cast<std::size_t>(i - 1)];
    if (digit < 0 || digit >= dims.local(i))
      throw Error("digit " + std::to_string(digit) + " out of range for subsystem " +
                  std::to_string(i) + " of dimension " + std::to_string(dims.local(i)));
    position = position * static_cast<std::size_t>(dims.local(i)) + static_cast<std::size_t>(digit);
  }
  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  amps(static_cast<Eigen::Index>(position)) = 1.0;
  return PureState(dims, std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(a.dims().concat(b.dims()), kron(a.amplitudes(), b.amplitudes()),
                   Validation::Skip);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.dims().concat(b.dims()), kron(a.matrix(), b.matrix()), Validation::Skip);
}

PureState make_ghz(int n, int d) {
  if (n < 2 || d < 2) throw Error("GHZ state needs n >= 2 and d >= 2");
  SubsystemDims dims(std::vector<int>(static_cast<std::size_t>(n), d));
  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  // |j...j> sits at j * (1 + d + ... + d^{n-1}).
  std::size_t repunit = 0;
  for (int i = 0; i < n; ++i) repunit = repunit * static_cast<std::size_t>(d) + 1;
  for (int j = 0; j < d; ++j)
    amps(static_cast<Eigen::Index>(static_cast<std::size_t>(j) * repunit)) = 1.0 / std::sqrt(double(d));
  return PureState(std::move(dims), std::move(amps));
}

PureState make_w(int n) {
  if (n < 2) throw Error("W state needs n >= 2");
  SubsystemDims dims(std::vector<int>(static_cast<std::size_t>(n), 2));
  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  for (int i = 0; i < n; ++i) amps(Eigen::Index{1} << i) = 1.0 / std::sqrt(double(n));
  return PureState(std::move(dims), std::move(amps));
}

PureState make_bell() { return make_ghz(2, 2); }

PureState random_pure(const SubsystemDims& dims, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  ComplexVector amps(static_cast<Eigen::Index>(dims.total()));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    amps(i) = Complex(radius * std::cos(angle), radius * std::sin(angle));
  }
  amps /= amps.norm();
  return PureState(dims, std::move(amps));
}

DensityMatrix werner_2qubit(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("Werner parameter must lie in [0, 1]");
  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = 1.0 / std::numbers::sqrt2;
  singlet(2) = -1.0 / std::numbers::sqrt2;
  ComplexMatrix m = p * singlet * singlet.adjoint() + ((1.0 - p) / 4.0) * ComplexMatrix::Identity(4, 4);
  return DensityMatrix(SubsystemDims{2, 2}, std::move(m));
}

DensityMatrix density_from_pure(const PureState& psi) {
  return DensityMatrix(psi.dims(), psi.amplitudes() * psi.amplitudes().adjoint(), Validation::Skip);
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms) {
  if (terms.empty()) throw Error("mixture needs at least one term");
  const auto& dims = terms.front().second.dims();
  double total = 0.0;
  ComplexMatrix m = ComplexMatrix::Zero(terms.front().second.matrix().rows(),
                                        terms.front().second.matrix().cols());
  for (const auto& [w, rho] : terms) {
    if (!(w >= 0.0)) throw Error("mixture weights must be non-negative");
    if (!(rho.dims() == dims)) throw Error("mixture terms have different dims");
    total += w;
    m += w * rho.matrix();
  }
  if (std::abs(total - 1.0) > kWeightTolerance) throw Error("mixture weights must sum to 1");
  return DensityMatrix(dims, std::move(m));
}

PureState permute_subsystems(const PureState& psi, const std::vector<int>& perm) {
  const auto positions = permutation_positions(perm, psi.party_count());
  // New basis index r maps to the old flat index offsets[r].
  const auto offsets = group_offsets(psi.dims().values(), positions);
  ComplexVector out(psi.amplitudes().size());
  for (std::size_t r = 0; r < offsets.size(); ++r)
    out(static_cast<Eigen::Index>(r)) = psi.amplitudes()(static_cast<Eigen::Index>(offsets[r]));
  return PureState(permuted_dims(psi.dims(), perm), std::move(out), Validation::Skip);
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm) {
  const auto positions = permutation_positions(perm, rho.party_count());
  const auto offsets = group_offsets(rho.dims().values(), positions);
  const auto d = static_cast<Eigen::Index>(offsets.size());
  ComplexMatrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      out(r, c) = rho.matrix()(static_cast<Eigen::Index>(offsets[static_cast<std::size_t>(r)]),
                               static_cast<Eigen::Index>(offsets[static_cast<std::size_t>(c)]));
  return DensityMatrix(permuted_dims(rho.dims(), perm), std::move(out), Validation::Skip);
}

double purity(const ComplexMatrix& rho) { return rho.cwiseAbs2().sum(); }

}  // namespace entloc
