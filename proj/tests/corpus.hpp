#pragma once

// Test-only generator of states with a known finest partition: tensor
// products of completely entangled blocks (GHZ, W, Haar-random) and single
// subsystems over a random partition, permuted into place.

#include <cstdint>
#include <random>
#include <vector>

#include "entloc/partitions.hpp"
#include "entloc/states.hpp"

namespace entloc::testing {

struct CorpusState {
  PureState state;
  Partition partition;
};

inline Partition random_partition(int n, std::mt19937_64& rng) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, blocks.size());
    const auto b = pick(rng);
    if (b == blocks.size())
      blocks.push_back({i});
    else
      blocks[b].push_back(i);
  }
  std::vector<IndexBlock> out;
  for (auto& b : blocks) out.emplace_back(std::move(b));
  return Partition(std::move(out));
}

/// Completely entangled state (or a single random qudit) on `size` subsystems.
inline PureState random_block_state(int size, bool allow_qutrits, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  auto local = [&] { return allow_qutrits && coin(rng) ? 3 : 2; };
  if (size == 1) return random_pure(SubsystemDims{local()}, rng());
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0:
      return make_ghz(size, local());
    case 1:
      return make_w(size);
    default: {
      std::vector<int> dims;
      for (int i = 0; i < size; ++i) dims.push_back(local());
      return random_pure(SubsystemDims(dims), rng());
    }
  }
}

/// State on n subsystems that factorizes exactly over `partition` and no finer.
inline PureState assemble(const Partition& partition, std::vector<PureState> factors) {
  PureState product = factors.front();
  std::vector<int> order(partition.blocks().front().begin(), partition.blocks().front().end());
  for (std::size_t k = 1; k < factors.size(); ++k) {
    product = tensor(product, factors[k]);
    order.insert(order.end(), partition.blocks()[k].begin(), partition.blocks()[k].end());
  }
  std::vector<int> perm(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) perm[static_cast<std::size_t>(order[p] - 1)] = static_cast<int>(p) + 1;
  return permute_subsystems(product, perm);
}

inline CorpusState corpus_state(int n, std::uint64_t seed, bool allow_qutrits = true) {
  std::mt19937_64 rng(seed);
  auto pi = random_partition(n, rng);
  std::vector<PureState> factors;
  for (const auto& b : pi.blocks()) factors.push_back(random_block_state(static_cast<int>(b.size()), allow_qutrits, rng));
  return {assemble(pi, std::move(factors)), pi};
}

/// `count` states with n cycling through 1..max_n.
inline std::vector<CorpusState> corpus(std::size_t count, int max_n, std::uint64_t seed,
                                       bool allow_qutrits = true) {
  std::vector<CorpusState> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(corpus_state(static_cast<int>(i % static_cast<std::size_t>(max_n)) + 1, seed + i, allow_qutrits));
  return out;
}

}  // namespace entloc::testing
