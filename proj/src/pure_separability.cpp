#include "entloc/pure_separability.hpp"

#include <algorithm>

#include "entloc/detail/worklist.hpp"
#include "entloc/error.hpp"

namespace entloc {

namespace {

// Terminal factors larger than this keep the worklist-carried state instead
// of being re-extracted from the marginal of the input.
constexpr std::size_t kMarginalFactorCap = 4096;

SubsystemDims sub_dims(const SubsystemDims& dims, const IndexBlock& support, const IndexBlock& group) {
  std::vector<int> out;
  for (int s : group) {
    auto it = std::lower_bound(support.begin(), support.end(), s);
    out.push_back(dims.values()[static_cast<std::size_t>(it - support.begin())]);
  }
  return SubsystemDims(std::move(out));
}

PureState normalized(SubsystemDims dims, ComplexVector v) {
  v /= v.norm();
  return PureState(std::move(dims), std::move(v));
}

ProductTest product_test(const PureState& psi, const IndexBlock& support, const Bipartition& bp,
                         double tol) {
  auto sd = schmidt_decompose(psi.amplitudes(), psi.dims(), support, bp, tol);
  ProductTest out;
  out.schmidt_rank = sd.rank;
  out.split = sd.rank == 1;
  if (out.split) {
    out.left = normalized(sub_dims(psi.dims(), support, bp.left), sd.left_vectors.col(0));
    out.right = normalized(sub_dims(psi.dims(), support, bp.right), sd.right_vectors.col(0));
  }
  return out;
}

struct PureOutcome {
  Bipartition bipartition;
  bool split = false;
  int schmidt_rank = 0;
  PureState left;
  PureState right;
};

PureState marginal_factor(const PureState& psi, const IndexBlock& block) {
  const auto all = IndexBlock::range(psi.party_count());
  std::vector<int> rest;
  std::set_difference(all.begin(), all.end(), block.begin(), block.end(), std::back_inserter(rest));
  const auto bp = Bipartition::of(block, IndexBlock(rest));
  const ComplexMatrix m = reshape_bipartite(psi.amplitudes(), psi.dims(), bp);
  const ComplexMatrix marginal = bp.left == block ? ComplexMatrix(m * m.adjoint())
                                                  : ComplexMatrix(m.transpose() * m.conjugate());
  return normalized(psi.dims().restrict_to(block), top_eigenvector(marginal));
}

}  // namespace

ProductTest is_product_across(const PureState& psi, const Bipartition& bp, double tol) {
  return product_test(psi, IndexBlock::range(psi.party_count()), bp, tol);
}

SeparabilityReport localize(const PureState& psi, const LocalizeOptions& options) {
  if (options.threads < 1) throw Error("thread count must be at least 1");
  SeparabilityReport report;
  report.tol = options.tol;

  const auto root = IndexBlock::range(psi.party_count());
  auto probe = [&](const IndexBlock& block, const PureState& factor, const Bipartition& bp) {
    auto t = product_test(factor, block, bp, options.tol);
    return PureOutcome{bp, t.split, t.schmidt_rank, std::move(t.left), std::move(t.right)};
  };
  auto record = [&](const IndexBlock& block, const PureOutcome& o) {
    report.evidence.push_back({block, o.bipartition, o.schmidt_rank, o.split});
  };
  auto terminal = detail::run_worklist(root, psi, options.threads, probe, record);

  std::vector<IndexBlock> blocks;
  for (const auto& t : terminal) blocks.push_back(t.block);
  report.partition = Partition(std::move(blocks));

  std::sort(terminal.begin(), terminal.end(),
            [](const auto& a, const auto& b) { return a.block.front() < b.block.front(); });
  for (auto& t : terminal) {
    if (t.block == root) {
      report.factors.push_back({t.block, psi});
    } else if (psi.dims().total_of(t.block) <= kMarginalFactorCap) {
      report.factors.push_back({t.block, marginal_factor(psi, t.block)});
    } else {
      report.factors.push_back({t.block, std::move(t.payload)});
    }
  }
  report.fully_separable = report.partition.is_finest();
  report.fully_entangled = report.partition.is_coarsest();
  return report;
}

std::uint64_t SeparabilityReport::schmidt_test_bound() const {
  std::uint64_t bound = 0;
  for (std::size_t i = 0; i < evidence.size(); ++i)
    if (i == 0 || !(evidence[i].block == evidence[i - 1].block))
      bound += (std::uint64_t{1} << (evidence[i].block.size() - 1)) - 1;
  return bound;
}

PureState rebuild_state(const SeparabilityReport& report) {
  if (report.factors.empty()) throw Error("report has no factor states");
  PureState product = report.factors.front().state;
  std::vector<int> order(report.factors.front().block.begin(), report.factors.front().block.end());
  for (std::size_t i = 1; i < report.factors.size(); ++i) {
    product = tensor(product, report.factors[i].state);
    order.insert(order.end(), report.factors[i].block.begin(), report.factors[i].block.end());
  }
  // Subsystem j of the result is the product's subsystem holding index j.
  std::vector<int> perm(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) perm[static_cast<std::size_t>(order[p] - 1)] = static_cast<int>(p) + 1;
  return permute_subsystems(product, perm);
}

double overlap_magnitude(const PureState& a, const PureState& b) {
  if (!(a.dims() == b.dims())) throw Error("overlap of states with different dims");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace entloc
