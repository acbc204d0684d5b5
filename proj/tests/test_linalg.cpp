#include <doctest.h>

#include <cmath>
#include <random>

#include "entloc/error.hpp"
#include "entloc/linalg.hpp"
#include "entloc/states.hpp"

using namespace entloc;

namespace {

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

ComplexMatrix random_density(std::size_t d, std::mt19937_64& rng) {
  auto a = random_matrix(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d), rng);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

ComplexMatrix bell_projector() {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
  return rho;
}

Bipartition random_bipartition(int n, std::mt19937_64& rng) {
  const auto range = enumerate_bipartitions(IndexBlock::range(n));
  return range[rng() % range.size()];
}

}  // namespace

TEST_CASE("svd named examples") {
  CHECK(svd(ComplexMatrix::Identity(2, 2)).sigma.isApprox(RealVector::Ones(2)));
  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  auto s = svd(nil).sigma;
  CHECK(s(0) == doctest::Approx(1.0));
  CHECK(std::abs(s(1)) < 1e-15);
  ComplexMatrix bell = ComplexMatrix::Identity(2, 2) / std::sqrt(2.0);
  auto b = svd(bell).sigma;
  CHECK(b(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("svd rejects non-finite input") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(svd(m), Error);
}

TEST_CASE("svd reconstruction on random matrices up to 256x256") {
  std::mt19937_64 rng(11);
  for (auto [r, c] : std::vector<std::pair<int, int>>{{1, 1}, {3, 7}, {16, 5}, {40, 40}, {64, 200}, {256, 256}}) {
    const auto m = random_matrix(r, c, rng);
    const auto res = svd(m);
    const ComplexMatrix rebuilt = res.u * res.sigma.cast<Complex>().asDiagonal() * res.v.adjoint();
    CHECK((m - rebuilt).norm() <= 1e-10 * m.norm());
    const auto k = res.sigma.size();
    CHECK((res.u.adjoint() * res.u - ComplexMatrix::Identity(k, k)).norm() < 1e-10);
    CHECK((res.v.adjoint() * res.v - ComplexMatrix::Identity(k, k)).norm() < 1e-10);
    for (Eigen::Index i = 1; i < k; ++i) CHECK(res.sigma(i) <= res.sigma(i - 1));
  }
}

TEST_CASE("reshape_bipartite bookkeeping") {
  const SubsystemDims dims{2, 2, 2};
  const auto ket010 = make_basis(dims, {0, 1, 0});
  const auto m = reshape_bipartite(ket010.amplitudes(), dims, Bipartition{{1, 3}, {2}});
  REQUIRE(m.rows() == 4);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 1) == Complex(1.0));
  CHECK(m.cwiseAbs().sum() == doctest::Approx(1.0));

  const auto ghz = make_ghz(3);
  const auto g = reshape_bipartite(ghz.amplitudes(), dims, Bipartition{{1, 3}, {2}});
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(g(0, 0) - h) < 1e-15);
  CHECK(std::abs(g(3, 1) - h) < 1e-15);
  CHECK(g.cwiseAbs().sum() == doctest::Approx(2 * h));
}

TEST_CASE("reshape_bipartite contiguous case is a plain row-major reshape") {
  const SubsystemDims dims{2, 3, 2};
  const auto psi = random_pure(dims, 5);
  const auto m = reshape_bipartite(psi.amplitudes(), dims, Bipartition{{1, 2}, {3}});
  for (Eigen::Index r = 0; r < 6; ++r)
    for (Eigen::Index c = 0; c < 2; ++c) CHECK(m(r, c) == psi.amplitudes()(r * 2 + c));
}

TEST_CASE("reshape_bipartite rejects mismatched input") {
  const SubsystemDims dims{2, 2};
  ComplexVector v = ComplexVector::Zero(3);
  CHECK_THROWS_AS(reshape_bipartite(v, dims, Bipartition{{1}, {2}}), Error);
  ComplexVector ok = ComplexVector::Zero(4);
  CHECK_THROWS_AS(reshape_bipartite(ok, dims, Bipartition{{1}, {3}}), Error);
}

TEST_CASE("reshape preserves the norm and inverts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<int> d;
    for (int i = 0; i < n; ++i) d.push_back(2 + static_cast<int>(rng() % 2));
    const SubsystemDims dims(d);
    const auto psi = random_pure(dims, rng());
    const auto bp = random_bipartition(n, rng);
    const auto m = reshape_bipartite(psi.amplitudes(), dims, bp);
    CHECK(m.norm() == doctest::Approx(psi.amplitudes().norm()).epsilon(1e-14));
    CHECK(unreshape_bipartite(m, dims, IndexBlock::range(n), bp) == psi.amplitudes());
  }
}

TEST_CASE("schmidt_decompose named examples") {
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto product = tensor(make_basis(SubsystemDims{2}, {0}), PureState(SubsystemDims{2}, plus));
  auto sd = schmidt_decompose(product.amplitudes(), product.dims(), Bipartition{{1}, {2}});
  CHECK(sd.rank == 1);
  CHECK(sd.coefficients(0) == doctest::Approx(1.0));

  const auto bell = make_bell();
  sd = schmidt_decompose(bell.amplitudes(), bell.dims(), Bipartition{{1}, {2}});
  CHECK(sd.rank == 2);
  CHECK(sd.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sd.coefficients(1) == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto w = make_w(3);
  sd = schmidt_decompose(w.amplitudes(), w.dims(), Bipartition{{1}, {2, 3}});
  CHECK(sd.rank == 2);
  CHECK(sd.coefficients(0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(sd.coefficients(1) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("schmidt_decompose errors") {
  const SubsystemDims dims{2, 2};
  CHECK_THROWS_WITH_AS(schmidt_decompose(ComplexVector::Zero(4), dims, Bipartition{{1}, {2}}),
                       doctest::Contains("null state"), Error);
  const auto bell = make_bell();
  CHECK_THROWS_AS(schmidt_decompose(bell.amplitudes(), dims, Bipartition{{1}, {2}}, 0.0), Error);
  CHECK_THROWS_AS(schmidt_decompose(bell.amplitudes(), dims, Bipartition{{1}, {2}}, 1.0), Error);
}

TEST_CASE("Schmidt data reconstructs random states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<int> d;
    for (int i = 0; i < n; ++i) d.push_back(2 + static_cast<int>(rng() % 2));
    const SubsystemDims dims(d);
    const auto psi = random_pure(dims, rng());
    const auto bp = random_bipartition(n, rng);
    const auto sd = schmidt_decompose(psi.amplitudes(), dims, bp);
    CHECK(std::abs(sd.coefficients.squaredNorm() - 1.0) <= 1e-10);
    CHECK(sd.rank <= std::min(sd.left_vectors.rows(), sd.right_vectors.rows()));
    ComplexMatrix m = ComplexMatrix::Zero(sd.left_vectors.rows(), sd.right_vectors.rows());
    for (int i = 0; i < sd.rank; ++i)
      m += sd.coefficients(i) * sd.left_vectors.col(i) * sd.right_vectors.col(i).transpose();
    const auto rebuilt = unreshape_bipartite(m, dims, IndexBlock::range(n), bp);
    CHECK(std::abs(rebuilt.dot(psi.amplitudes())) >= 1.0 - 1e-9);
  }
}

TEST_CASE("partial_trace named examples") {
  std::mt19937_64 rng(1);
  const SubsystemDims dims{2, 3};
  const auto rho = random_density(6, rng);
  CHECK(partial_trace(rho, dims, IndexBlock{1, 2}).isApprox(rho));

  const auto bell = make_bell();
  const ComplexMatrix bell_rho = bell.amplitudes() * bell.amplitudes().adjoint();
  CHECK(partial_trace(bell_rho, SubsystemDims{2, 2}, IndexBlock{1}).isApprox(0.5 * ComplexMatrix::Identity(2, 2)));

  const auto ghz = make_ghz(3);
  const ComplexMatrix ghz_rho = ghz.amplitudes() * ghz.amplitudes().adjoint();
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK((partial_trace(ghz_rho, SubsystemDims{2, 2, 2}, IndexBlock{1, 2}) - expected).norm() < 1e-15);
  CHECK_THROWS_AS(reduce_density(ghz_rho, SubsystemDims{2, 2, 2}, {}), Error);
}

TEST_CASE("partial traces compose") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const SubsystemDims dims = trial % 2 ? SubsystemDims{2, 3, 2} : SubsystemDims{2, 2, 2, 2};
    const auto rho = random_density(dims.total(), rng);
    const int n = dims.count();
    // Trace out subsystem 1 then (old) subsystem n, vs both at once.
    const auto keep_all_but_first = [&] {
      std::vector<int> m;
      for (int i = 2; i <= n; ++i) m.push_back(i);
      return IndexBlock(m);
    }();
    const auto step = partial_trace(rho, dims, keep_all_but_first);
    const auto step_dims = dims.restrict_to(keep_all_but_first);
    std::vector<int> keep2;
    for (int i = 1; i < step_dims.count(); ++i) keep2.push_back(i);
    const auto twice = partial_trace(step, step_dims, IndexBlock(keep2));
    std::vector<int> keep_once;
    for (int i = 2; i < n; ++i) keep_once.push_back(i);
    const auto once = partial_trace(rho, dims, IndexBlock(keep_once));
    CHECK((twice - once).norm() < 1e-13);
    CHECK(std::abs(once.trace() - Complex(1.0)) < 1e-13);
  }
}

TEST_CASE("partial_transpose examples") {
  std::mt19937_64 rng(2);
  const auto a = random_density(2, rng);
  const auto b = random_density(3, rng);
  const auto pt = partial_transpose(kron(a, b), 2, 3);
  CHECK((pt - kron(a, ComplexMatrix(b.transpose()))).norm() < 1e-15);
  CHECK(hermitian_eigenvalues(pt)(0) >= -1e-12);

  const auto ev = hermitian_eigenvalues(partial_transpose(bell_projector(), 2, 2));
  CHECK(ev(0) == doctest::Approx(-0.5));
  for (int i = 1; i < 4; ++i) CHECK(ev(i) == doctest::Approx(0.5));

  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
  CHECK(partial_transpose(diag, 2, 2) == diag);
  CHECK_THROWS_AS(partial_transpose(diag, 2, 3), Error);
}

TEST_CASE("partial transpose preserves the trace of the spectrum") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dA = 2 + rng() % 2;
    const std::size_t dB = 2 + rng() % 3;
    const auto rho = random_density(dA * dB, rng);
    CHECK(hermitian_eigenvalues(partial_transpose(rho, dA, dB)).sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eigenvalues") {
  CHECK(hermitian_eigenvalues(ComplexMatrix::Identity(3, 3)).isApprox(RealVector::Ones(3)));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.8;
  d(1, 1) = 0.2;
  const auto ev = hermitian_eigenvalues(d);
  CHECK(ev(0) == doctest::Approx(0.2));
  CHECK(ev(1) == doctest::Approx(0.8));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), Error);
}

TEST_CASE("realignment trace norms") {
  const auto product = kron(ComplexVector(make_basis(SubsystemDims{2}, {0}).amplitudes()),
                            ComplexVector(make_basis(SubsystemDims{2}, {1}).amplitudes()));
  CHECK(trace_norm(realign(product * product.adjoint(), 2, 2)) == doctest::Approx(1.0));
  CHECK(trace_norm(realign(bell_projector(), 2, 2)) == doctest::Approx(2.0));
  CHECK(trace_norm(realign(0.25 * ComplexMatrix::Identity(4, 4), 2, 2)) == doctest::Approx(0.5));
  const auto r = realign(ComplexMatrix::Identity(6, 6) / 6.0, 2, 3);
  CHECK(r.rows() == 4);
  CHECK(r.cols() == 9);
}
