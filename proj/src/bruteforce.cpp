#include "entloc/bruteforce.hpp"

#include <algorithm>
#include <map>

#include "entloc/error.hpp"

namespace entloc {

double marginal_purity(const PureState& psi, const IndexBlock& block) {
  const auto& dims = psi.dims().values();
  const auto n = dims.size();
  if (static_cast<std::size_t>(block.back()) > n)
    throw Error("block " + block.to_string() + " outside a " + std::to_string(n) + "-party state");

  // Split every flat index into (kept digits, traced digits), both big-endian.
  std::vector<std::size_t> kept_index(psi.dims().total());
  std::vector<std::size_t> traced_index(psi.dims().total());
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t p = 0; p < n; ++p) (block.contains(static_cast<int>(p) + 1) ? kept_dim : traced_dim) *= static_cast<std::size_t>(dims[p]);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t flat = 0; flat < kept_index.size(); ++flat) {
    std::size_t kept = 0;
    std::size_t traced = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (block.contains(static_cast<int>(p) + 1))
        kept = kept * static_cast<std::size_t>(dims[p]) + digits[p];
      else
        traced = traced * static_cast<std::size_t>(dims[p]) + digits[p];
    }
    kept_index[flat] = kept;
    traced_index[flat] = traced;
    for (std::size_t p = n; p-- > 0;) {
      if (++digits[p] < static_cast<std::size_t>(dims[p])) break;
      digits[p] = 0;
    }
  }

  // amplitude table a[kept][traced]; rho_X = a a^dagger.
  std::vector<Complex> table(kept_dim * traced_dim);
  for (std::size_t flat = 0; flat < kept_index.size(); ++flat)
    table[kept_index[flat] * traced_dim + traced_index[flat]] = psi.amplitudes()(static_cast<Eigen::Index>(flat));
  double purity = 0.0;
  for (std::size_t a = 0; a < kept_dim; ++a)
    for (std::size_t b = 0; b < kept_dim; ++b) {
      Complex entry{0.0, 0.0};
      for (std::size_t t = 0; t < traced_dim; ++t)
        entry += table[a * traced_dim + t] * std::conj(table[b * traced_dim + t]);
      purity += std::norm(entry);
    }
  return purity;
}

Partition brute_finest_partition(const PureState& psi, double tol) {
  const int n = psi.party_count();
  if (n > kBruteForceCap)
    throw Error("brute-force search is limited to " + std::to_string(kBruteForceCap) +
                " subsystems, got " + std::to_string(n));
  auto partitions = enumerate_partitions(n, kBruteForceCap);
  std::stable_sort(partitions.begin(), partitions.end(), [](const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });

  std::map<IndexBlock, bool> pure_block;
  auto block_passes = [&](const IndexBlock& block) {
    if (block.size() == static_cast<std::size_t>(n)) return true;
    auto [it, inserted] = pure_block.try_emplace(block, false);
    if (inserted) it->second = marginal_purity(psi, block) >= 1.0 - tol;
    return it->second;
  };

  const Partition* found = nullptr;
  for (const auto& pi : partitions) {
    if (found && pi.size() < found->size()) break;
    if (!std::all_of(pi.blocks().begin(), pi.blocks().end(), block_passes)) continue;
    if (found)
      throw Error("two finest partitions " + found->to_string() + " and " + pi.to_string() +
                  " pass the purity test; tolerance is too loose");
    found = &pi;
  }
  // The single-block partition always passes, so `found` is set.
  return *found;
}

}  // namespace entloc
