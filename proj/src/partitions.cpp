#include "entloc/partitions.hpp"

#include <algorithm>
#include <sstream>

#include "entloc/error.hpp"

namespace entloc {

IndexBlock::IndexBlock(std::vector<int> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error("index block must not be empty");
  std::sort(members_.begin(), members_.end());
  if (members_.front() < 1) throw Error("subsystem indices are 1-based");
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw Error("duplicate subsystem index in block " + to_string());
}

IndexBlock IndexBlock::range(int n) {
  if (n < 1) throw Error("system size must be at least 1");
  std::vector<int> members(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(i)] = i + 1;
  return IndexBlock(std::move(members));
}

bool IndexBlock::contains(int index) const {
  return std::binary_search(members_.begin(), members_.end(), index);
}

bool IndexBlock::is_subset_of(const IndexBlock& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::string IndexBlock::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < members_.size(); ++i) out << (i ? "," : "") << members_[i];
  out << ']';
  return out.str();
}

Bipartition Bipartition::of(IndexBlock a, IndexBlock b) {
  for (int m : a)
    if (b.contains(m)) throw Error("bipartition halves overlap at index " + std::to_string(m));
  if (b.front() < a.front()) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

IndexBlock Bipartition::parent() const {
  std::vector<int> all;
  all.reserve(left.size() + right.size());
  std::merge(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(all));
  return IndexBlock(std::move(all));
}

std::string Bipartition::to_string() const {
  return "(" + left.to_string() + "|" + right.to_string() + ")";
}

BipartitionRange::BipartitionRange(IndexBlock block) : block_(std::move(block)) {
  if (block_.size() < 2) throw Error("block too small to bipartition: " + block_.to_string());
  if (block_.size() > 63) throw Error("block too large to bipartition: more than 63 members");
  count_ = (std::uint64_t{1} << (block_.size() - 1)) - 1;
}

Bipartition BipartitionRange::operator[](std::uint64_t i) const {
  if (i >= count_) throw Error("bipartition index out of range");
  const auto& m = block_.members();
  std::vector<int> left{m.front()};
  std::vector<int> right;
  for (std::size_t j = 1; j < m.size(); ++j) {
    if ((i >> (j - 1)) & 1U)
      left.push_back(m[j]);
    else
      right.push_back(m[j]);
  }
  return {IndexBlock(std::move(left)), IndexBlock(std::move(right))};
}

std::vector<Bipartition> BipartitionRange::to_vector() const {
  std::vector<Bipartition> out;
  out.reserve(count_);
  for (auto bp : *this) out.push_back(std::move(bp));
  return out;
}

BipartitionRange enumerate_bipartitions(const IndexBlock& block) { return BipartitionRange(block); }

Partition::Partition(std::vector<IndexBlock> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error("partition must have at least one block");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const IndexBlock& a, const IndexBlock& b) { return a.front() < b.front(); });
  // Blocks are pairwise disjoint iff the merged member list has no repeats.
  std::vector<int> all;
  for (const auto& b : blocks_) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error("partition blocks are not disjoint: " + to_string());
}

Partition::Partition(std::initializer_list<std::initializer_list<int>> blocks)
    : Partition([&] {
        std::vector<IndexBlock> out;
        for (auto b : blocks) out.emplace_back(std::vector<int>(b));
        return out;
      }()) {}

Partition Partition::finest(int n) {
  std::vector<IndexBlock> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back(IndexBlock{i});
  return Partition(std::move(blocks));
}

Partition Partition::coarsest(int n) { return Partition({IndexBlock::range(n)}); }

IndexBlock Partition::ambient() const {
  std::vector<int> all;
  for (const auto& b : blocks_) all.insert(all.end(), b.begin(), b.end());
  return IndexBlock(std::move(all));
}

std::size_t Partition::element_count() const {
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.size();
  return total;
}

bool Partition::is_finest() const { return blocks_.size() == element_count(); }

bool Partition::is_coarsest() const { return blocks_.size() == 1; }

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) out += (i ? "," : "") + blocks_[i].to_string();
  return out + "]";
}

std::vector<std::vector<int>> Partition::to_nested() const {
  std::vector<std::vector<int>> out;
  for (const auto& b : blocks_) out.push_back(b.members());
  return out;
}

std::vector<Partition> enumerate_partitions(int n, int cap) {
  if (n < 1) throw Error("partition enumeration needs n >= 1");
  if (n > cap)
    throw Error("partition enumeration of n=" + std::to_string(n) + " exceeds the cap of " +
                std::to_string(cap));
  const auto size = static_cast<std::size_t>(n);
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(bell_number(n)));

  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<std::size_t> rgs(size, 0);
  std::vector<std::size_t> prefix_max(size, 0);
  while (true) {
    std::vector<std::vector<int>> members(prefix_max.back() + 1);
    for (std::size_t i = 0; i < size; ++i) members[rgs[i]].push_back(static_cast<int>(i) + 1);
    std::vector<IndexBlock> blocks;
    blocks.reserve(members.size());
    for (auto& m : members) blocks.emplace_back(std::move(m));
    out.emplace_back(std::move(blocks));

    std::size_t i = size - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < size; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

Count stirling2(int n, int k) {
  if (n < 0 || k < 0) throw Error("stirling2 needs non-negative arguments");
  if (k > n) return 0;
  // Row-by-row recurrence S(i,j) = j*S(i-1,j) + S(i-1,j-1).
  const auto width = static_cast<std::size_t>(k);
  std::vector<Count> row(width + 1, 0);
  row[0] = 1;
  for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) {
    for (std::size_t j = std::min(i, width); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[width];
}

Count bell_number(int n) {
  if (n < 0) throw Error("bell_number needs n >= 0");
  if (n == 0) return 1;
  Count total = 0;
  for (int k = 1; k <= n; ++k) total += stirling2(n, k);
  return total;
}

namespace {

void require_same_ambient(const Partition& a, const Partition& b) {
  if (a.ambient() != b.ambient())
    throw Error("partitions " + a.to_string() + " and " + b.to_string() +
                " live on different index sets");
}

}  // namespace

bool refines(const Partition& a, const Partition& b) {
  require_same_ambient(a, b);
  return std::all_of(a.blocks().begin(), a.blocks().end(), [&](const IndexBlock& x) {
    return std::any_of(b.blocks().begin(), b.blocks().end(),
                       [&](const IndexBlock& y) { return x.is_subset_of(y); });
  });
}

Partition meet(const Partition& a, const Partition& b) {
  require_same_ambient(a, b);
  std::vector<IndexBlock> blocks;
  for (const auto& x : a.blocks()) {
    for (const auto& y : b.blocks()) {
      std::vector<int> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
      if (!common.empty()) blocks.emplace_back(std::move(common));
    }
  }
  return Partition(std::move(blocks));
}

}  // namespace entloc
