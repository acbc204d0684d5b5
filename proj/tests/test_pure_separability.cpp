#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "corpus.hpp"
#include "entloc/bruteforce.hpp"
#include "entloc/pure_separability.hpp"

using namespace entloc;

namespace {

PureState single(double re0, double re1) {
  ComplexVector v(2);
  v << re0, re1;
  return PureState(SubsystemDims{2}, v / v.norm());
}

PureState bell13_zero2() {
  return permute_subsystems(tensor(make_bell(), make_basis(SubsystemDims{2}, {0})), {1, 3, 2});
}

Partition relabel(const Partition& pi, const std::vector<int>& perm) {
  // New subsystem j holds old subsystem perm[j-1]; old index i moves to j.
  std::vector<int> inverse(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) inverse[static_cast<std::size_t>(perm[j] - 1)] = static_cast<int>(j) + 1;
  std::vector<IndexBlock> blocks;
  for (const auto& b : pi.blocks()) {
    std::vector<int> m;
    for (int i : b) m.push_back(inverse[static_cast<std::size_t>(i - 1)]);
    blocks.emplace_back(std::move(m));
  }
  return Partition(std::move(blocks));
}

}  // namespace

TEST_CASE("is_product_across examples") {
  const auto state = tensor(make_basis(SubsystemDims{2}, {0}), make_bell());
  auto t = is_product_across(state, Bipartition{{1}, {2, 3}});
  CHECK(t.split);
  CHECK(overlap_magnitude(t.left, make_basis(SubsystemDims{2}, {0})) == doctest::Approx(1.0));
  CHECK(overlap_magnitude(t.right, make_bell()) == doctest::Approx(1.0));

  t = is_product_across(state, Bipartition{{1, 3}, {2}});
  CHECK_FALSE(t.split);
  CHECK(t.schmidt_rank == 2);

  const auto ghz = make_ghz(3);
  for (const auto& bp : enumerate_bipartitions(IndexBlock::range(3))) CHECK_FALSE(is_product_across(ghz, bp).split);
}

TEST_CASE("localize canonical examples") {
  const auto sep = tensor(tensor(single(1, 1), single(0, 1)), single(1, -1));
  auto r = localize(sep);
  CHECK(r.partition == Partition::finest(3));
  CHECK(r.fully_separable);
  CHECK_FALSE(r.fully_entangled);

  r = localize(make_ghz(4));
  CHECK(r.partition == Partition::coarsest(4));
  CHECK(r.fully_entangled);
  CHECK(r.schmidt_tests() == 7);

  CHECK(localize(bell13_zero2()).partition == Partition{{1, 3}, {2}});
  CHECK(localize(tensor(make_bell(), make_bell())).partition == Partition{{1, 2}, {3, 4}});

  const auto one = localize(make_basis(SubsystemDims{3}, {2}));
  CHECK(one.partition == Partition{{1}});
  CHECK(one.schmidt_tests() == 0);
}

TEST_CASE("localize evidence trail") {
  const auto r = localize(bell13_zero2());
  // Block {1,2,3}: ({1},{2,3}) rank 2, ({1,2},{3}) rank 2, ({1,3},{2}) rank 1.
  // Block {1,3}: ({1},{3}) rank 2.
  REQUIRE(r.evidence.size() == 4);
  CHECK(r.evidence[2].split);
  CHECK(r.evidence[2].bipartition == Bipartition{{1, 3}, {2}});
  CHECK(r.evidence[3].block == IndexBlock{1, 3});
  CHECK(r.evidence[3].schmidt_rank == 2);
  CHECK(r.schmidt_test_bound() == 3 + 1);
}

TEST_CASE("factor states rebuild the input") {
  for (const auto& item : testing::corpus(60, 6, 1000)) {
    const auto r = localize(item.state);
    REQUIRE(r.factors.size() == r.partition.size());
    for (std::size_t k = 0; k < r.factors.size(); ++k) {
      CHECK(r.factors[k].block == r.partition.blocks()[k]);
      CHECK(r.factors[k].state.dims() == item.state.dims().restrict_to(r.factors[k].block));
    }
    CHECK(overlap_magnitude(rebuild_state(r), item.state) >= 1.0 - 1e-8);
  }
}

TEST_CASE("localize recovers the constructed partition and agrees with brute force") {
  for (const auto& item : testing::corpus(120, 6, 2000)) {
    const auto r = localize(item.state);
    CHECK(r.partition == item.partition);
    CHECK(brute_finest_partition(item.state) == r.partition);
  }
}

TEST_CASE("finest-partition property is re-checkable from the evidence") {
  for (const auto& item : testing::corpus(40, 5, 3000)) {
    const auto r = localize(item.state);
    for (const auto& block : r.partition.blocks()) {
      if (block.size() < 2) continue;
      std::size_t rejected = 0;
      for (const auto& e : r.evidence)
        if (e.block == block) {
          CHECK_FALSE(e.split);
          CHECK(e.schmidt_rank >= 2);
          ++rejected;
        }
      CHECK(rejected == (std::size_t{1} << (block.size() - 1)) - 1);
    }
  }
}

TEST_CASE("permutation equivariance") {
  std::mt19937_64 rng(99);
  for (const auto& item : testing::corpus(40, 6, 4000)) {
    const int n = item.state.party_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto moved = localize(permute_subsystems(item.state, perm)).partition;
    CHECK(moved == relabel(localize(item.state).partition, perm));
  }
}

TEST_CASE("localize of a tensor product is the disjoint union") {
  const auto items = testing::corpus(30, 3, 5000);
  for (std::size_t i = 0; i + 1 < items.size(); i += 2) {
    const auto& a = items[i].state;
    const auto& b = items[i + 1].state;
    const auto pa = localize(a).partition;
    const auto pb = localize(b).partition;
    std::vector<IndexBlock> blocks = pa.blocks();
    for (const auto& blk : pb.blocks()) {
      std::vector<int> shifted;
      for (int m : blk) shifted.push_back(m + a.party_count());
      blocks.emplace_back(std::move(shifted));
    }
    CHECK(localize(tensor(a, b)).partition == Partition(std::move(blocks)));
  }
}

TEST_CASE("thread count does not change the report") {
  for (const auto& item : testing::corpus(20, 6, 6000)) {
    const auto one = localize(item.state, {kDefaultSchmidtTolerance, 1});
    const auto many = localize(item.state, {kDefaultSchmidtTolerance, 8});
    CHECK(one.partition == many.partition);
    REQUIRE(one.evidence.size() == many.evidence.size());
    for (std::size_t i = 0; i < one.evidence.size(); ++i) {
      CHECK(one.evidence[i].bipartition == many.evidence[i].bipartition);
      CHECK(one.evidence[i].schmidt_rank == many.evidence[i].schmidt_rank);
    }
    for (std::size_t k = 0; k < one.factors.size(); ++k)
      CHECK(one.factors[k].state.amplitudes() == many.factors[k].state.amplitudes());
  }
}

TEST_CASE("fully product states use n-1 Schmidt tests") {
  for (int n = 2; n <= 12; ++n) {
    PureState psi = random_pure(SubsystemDims{2}, 1);
    for (int i = 1; i < n; ++i) psi = tensor(psi, random_pure(SubsystemDims{2}, static_cast<std::uint64_t>(i) + 1));
    const auto r = localize(psi);
    CHECK(r.fully_separable);
    CHECK(r.schmidt_tests() == static_cast<std::size_t>(n - 1));
  }
}
