#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "entloc/error.hpp"
#include "entloc/partitions.hpp"

namespace entloc::detail {

/// Evaluates `probe` over `range` in canonical order and stops at the first
/// outcome with `split == true`. Up to `threads` bipartitions are evaluated
/// concurrently per batch; outcomes past the first hit are discarded, so the
/// returned prefix is identical for every thread count.
template <typename Probe>
auto scan_until_split(const BipartitionRange& range, int threads, const Probe& probe) {
  using Outcome = decltype(probe(range[0]));
  std::vector<Outcome> committed;
  const std::uint64_t total = range.size();
  const std::uint64_t batch = threads > 1 ? static_cast<std::uint64_t>(threads) : 1;

  for (std::uint64_t start = 0; start < total; start += batch) {
    const std::uint64_t count = std::min(batch, total - start);
    std::vector<Outcome> results(count);
    if (count == 1) {
      results[0] = probe(range[start]);
    } else {
      std::vector<std::exception_ptr> errors(count);
      std::vector<std::thread> workers;
      workers.reserve(count);
      for (std::uint64_t i = 0; i < count; ++i)
        workers.emplace_back([&, i] {
          try {
            results[i] = probe(range[start + i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        });
      for (auto& w : workers) w.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (auto& r : results) {
      const bool hit = r.split;
      committed.push_back(std::move(r));
      if (hit) return committed;
    }
  }
  return committed;
}

template <typename Payload>
struct TerminalBlock {
  IndexBlock block;
  Payload payload;
};

/// FIFO worklist shared by the pure and mixed localizers.
///
/// Singletons are committed directly. Larger blocks are scanned bipartition
/// by bipartition; the first split pushes both halves, and a block without
/// any split is committed as irreducible. `probe(block, payload, bp)` returns
/// an outcome with `split`, `left` and `right` payload members;
/// `record(block, outcome)` sees every committed outcome in order.
///
/// When a full scan finds no split, `fallback(outcomes)` may name one outcome
/// index to split on anyway (or return a negative value to keep the block).
template <typename Payload, typename Probe, typename Record, typename Fallback>
std::vector<TerminalBlock<Payload>> run_worklist(IndexBlock root, Payload root_payload, int threads,
                                                 const Probe& probe, const Record& record,
                                                 const Fallback& fallback) {
  std::deque<TerminalBlock<Payload>> pending;
  pending.push_back({std::move(root), std::move(root_payload)});
  std::vector<TerminalBlock<Payload>> done;

  while (!pending.empty()) {
    auto item = std::move(pending.front());
    pending.pop_front();
    if (item.block.size() == 1) {
      done.push_back(std::move(item));
      continue;
    }
    auto outcomes = scan_until_split(enumerate_bipartitions(item.block), threads,
                                     [&](const Bipartition& bp) { return probe(item.block, item.payload, bp); });
    std::ptrdiff_t hit_index = -1;
    if (!outcomes.empty() && outcomes.back().split) {
      hit_index = static_cast<std::ptrdiff_t>(outcomes.size()) - 1;
    } else {
      hit_index = fallback(outcomes);
      if (hit_index >= 0) outcomes[static_cast<std::size_t>(hit_index)].split = true;
    }
    for (const auto& o : outcomes) record(item.block, o);
    if (hit_index >= 0) {
      auto& hit = outcomes[static_cast<std::size_t>(hit_index)];
      pending.push_back({hit.bipartition.left, std::move(hit.left)});
      pending.push_back({hit.bipartition.right, std::move(hit.right)});
    } else {
      done.push_back(std::move(item));
    }
  }
  return done;
}

template <typename Payload, typename Probe, typename Record>
std::vector<TerminalBlock<Payload>> run_worklist(IndexBlock root, Payload root_payload, int threads,
                                                 const Probe& probe, const Record& record) {
  return run_worklist(std::move(root), std::move(root_payload), threads, probe, record,
                      [](const auto&) { return std::ptrdiff_t{-1}; });
}

}  // namespace entloc::detail
