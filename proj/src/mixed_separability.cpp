#include "entloc/mixed_separability.hpp"

#include <algorithm>
#include <variant>

#include "entloc/detail/worklist.hpp"
#include "entloc/error.hpp"

namespace entloc {

namespace {

constexpr double kWitnessTolerance = 1e-9;

struct MixedOutcome {
  Bipartition bipartition;
  bool split = false;
  Confidence confidence = Confidence::Definite;
  CombinedVerdict verdict;
  std::monostate left;
  std::monostate right;
};

}  // namespace

std::string_view to_string(InconclusivePolicy p) {
  return p == InconclusivePolicy::TreatAsEntangled ? "definite" : "heuristic";
}

std::string_view to_string(Confidence c) { return c == Confidence::Definite ? "DEFINITE" : "HEURISTIC"; }

bool MixedReport::exact() const {
  return unresolved.empty() && std::all_of(splits.begin(), splits.end(), [](const SplitRecord& s) {
           return s.confidence == Confidence::Definite;
         });
}

BipartiteReduction reduce_to_bipartition(const DensityMatrix& rho, const Bipartition& bp) {
  std::vector<int> order(bp.left.begin(), bp.left.end());
  order.insert(order.end(), bp.right.begin(), bp.right.end());
  return {reduce_density(rho.matrix(), rho.dims(), order), rho.dims().total_of(bp.left),
          rho.dims().total_of(bp.right)};
}

MixedReport localize_mixed(const DensityMatrix& rho, const OracleRegistry& registry,
                           const MixedLocalizeOptions& options) {
  if (registry.empty()) throw Error("oracle registry is empty");
  if (options.threads < 1) throw Error("thread count must be at least 1");
  MixedReport report;
  report.tol = options.tol;
  report.policy = options.policy;

  auto probe = [&](const IndexBlock&, const std::monostate&, const Bipartition& bp) {
    if (std::max(rho.dims().total_of(bp.left), rho.dims().total_of(bp.right)) >
        options.reduced_dimension_cap)
      throw Error("reduced dimension across " + bp.to_string() + " exceeds the cap of " +
                  std::to_string(options.reduced_dimension_cap));
    auto reduced = reduce_to_bipartition(rho, bp);
    MixedOutcome out;
    out.bipartition = bp;
    out.verdict = oracle_all(registry, reduced.matrix, reduced.dA, reduced.dB, options.tol);
    switch (out.verdict.verdict.verdict) {
      case Verdict::Separable:
        out.split = true;
        break;
      case Verdict::Inconclusive:
        out.confidence = Confidence::Heuristic;
        break;
      case Verdict::Entangled:
        break;
    }
    return out;
  };
  auto record = [&](const IndexBlock& block, const MixedOutcome& o) {
    report.evidence.push_back({block, o.bipartition, o.verdict, o.split});
    if (o.split)
      report.splits.push_back({block, o.bipartition, o.confidence});
    else if (o.verdict.verdict.verdict == Verdict::Inconclusive)
      report.unresolved.emplace_back(block, o.bipartition);
  };
  // The heuristic policy only acts once a full scan found no certified split,
  // and then splits at the first inconclusive bipartition.
  auto fallback = [&](const std::vector<MixedOutcome>& outcomes) -> std::ptrdiff_t {
    if (options.policy != InconclusivePolicy::TreatAsSeparableHeuristic) return -1;
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      if (outcomes[i].verdict.verdict.verdict == Verdict::Inconclusive) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  auto terminal = detail::run_worklist(IndexBlock::range(rho.party_count()), std::monostate{},
                                       options.threads, probe, record, fallback);

  std::vector<IndexBlock> blocks;
  for (auto& t : terminal) blocks.push_back(std::move(t.block));
  report.partition = Partition(std::move(blocks));
  report.fully_separable = report.partition.is_finest();
  report.fully_entangled = report.partition.is_coarsest();
  return report;
}

double decomposition_residual(const DensityMatrix& rho, const Partition& pi,
                              const std::vector<ProductTerm>& decomposition) {
  const int n = rho.party_count();
  if (pi.ambient() != IndexBlock::range(n))
    throw Error("partition " + pi.to_string() + " does not cover the state's subsystems");
  if (decomposition.empty()) throw Error("decomposition has no terms");

  std::vector<int> order;
  for (const auto& b : pi.blocks()) order.insert(order.end(), b.begin(), b.end());
  std::vector<int> perm(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) perm[static_cast<std::size_t>(order[p] - 1)] = static_cast<int>(p) + 1;

  ComplexMatrix rebuilt = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& term : decomposition) {
    if (term.blocks.size() != pi.size())
      throw Error("decomposition term has " + std::to_string(term.blocks.size()) +
                  " factors but the partition has " + std::to_string(pi.size()) + " blocks");
    for (std::size_t k = 0; k < pi.size(); ++k)
      if (!(term.blocks[k].dims() == rho.dims().restrict_to(pi.blocks()[k])))
        throw Error("factor dims do not match block " + pi.blocks()[k].to_string());
    DensityMatrix product = term.blocks.front();
    for (std::size_t k = 1; k < term.blocks.size(); ++k) product = tensor(product, term.blocks[k]);
    rebuilt += term.weight * permute_subsystems(product, perm).matrix();
  }
  return (rebuilt - rho.matrix()).norm();
}

bool check_pi_separable_constructed(const DensityMatrix& rho, const Partition& pi,
                                    const std::vector<ProductTerm>& decomposition) {
  return decomposition_residual(rho, pi, decomposition) <= kWitnessTolerance;
}

}  // namespace entloc
