#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace entloc {

/// Arbitrary precision count. Native 64-bit would suffice up to B(25).
using Count = boost::multiprecision::cpp_int;

/// Default upper bound for full partition enumeration; B(12) = 4,213,597.
inline constexpr int kPartitionEnumerationCap = 12;

/// Sorted, non-empty set of distinct 1-based subsystem indices.
class IndexBlock {
 public:
  IndexBlock() = default;
  /// Members are sorted; duplicates, non-positive entries or an empty list throw.
  explicit IndexBlock(std::vector<int> members);
  IndexBlock(std::initializer_list<int> members)
      : IndexBlock(std::vector<int>(members)) {}

  /// {1, ..., n}
  static IndexBlock range(int n);

  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  int front() const { return members_.front(); }
  int back() const { return members_.back(); }
  bool contains(int index) const;
  bool is_subset_of(const IndexBlock& other) const;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  std::string to_string() const;

  friend bool operator==(const IndexBlock&, const IndexBlock&) = default;
  friend auto operator<=>(const IndexBlock&, const IndexBlock&) = default;

 private:
  std::vector<int> members_;
};

/// A 2-partition of a parent block. The parent's smallest member is always
/// in `left`.
struct Bipartition {
  IndexBlock left;
  IndexBlock right;

  /// Builds the canonical form of {a, b}, swapping the halves if needed.
  /// Throws if the halves overlap.
  static Bipartition of(IndexBlock a, IndexBlock b);

  IndexBlock parent() const;
  std::string to_string() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Lazy, random-access view over all 2^{m-1}-1 bipartitions of a block.
///
/// Index i is a binary counter over the non-anchor members (bit j set puts
/// the j-th non-anchor member into `left`); the anchor (smallest member) is
/// always in `left`, so the all-ones counter is excluded.
class BipartitionRange {
 public:
  explicit BipartitionRange(IndexBlock block);

  const IndexBlock& block() const { return block_; }
  std::uint64_t size() const { return count_; }
  Bipartition operator[](std::uint64_t i) const;
  std::vector<Bipartition> to_vector() const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Bipartition;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const BipartitionRange* range, std::uint64_t i) : range_(range), i_(i) {}
    Bipartition operator*() const { return (*range_)[i_]; }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++i_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

   private:
    const BipartitionRange* range_ = nullptr;
    std::uint64_t i_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, count_}; }

 private:
  IndexBlock block_;
  std::uint64_t count_ = 0;
};

/// Throws "block too small to bipartition" for blocks with fewer than two
/// members. Blocks larger than 63 members are rejected as well.
BipartitionRange enumerate_bipartitions(const IndexBlock& block);

/// Set partition in canonical form: members ascending within each block,
/// blocks ordered by their smallest member. The ambient set is the union of
/// the blocks.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<IndexBlock> blocks);
  Partition(std::initializer_list<std::initializer_list<int>> blocks);

  /// All-singletons partition of {1..n}.
  static Partition finest(int n);
  /// Single-block partition of {1..n}.
  static Partition coarsest(int n);

  const std::vector<IndexBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  IndexBlock ambient() const;
  /// Number of elements of the ambient set.
  std::size_t element_count() const;

  bool is_finest() const;
  bool is_coarsest() const;

  /// Nested-array text form, e.g. [[1,3],[2]].
  std::string to_string() const;
  std::vector<std::vector<int>> to_nested() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<IndexBlock> blocks_;
};

/// All B(n) partitions of {1..n}, in restricted-growth-string order.
std::vector<Partition> enumerate_partitions(int n, int cap = kPartitionEnumerationCap);

Count bell_number(int n);
/// S(n,k); zero when k > n.
Count stirling2(int n, int k);

/// True iff every block of `a` lies inside some block of `b`.
bool refines(const Partition& a, const Partition& b);

/// Coarsest common refinement (non-empty blockwise intersections).
Partition meet(const Partition& a, const Partition& b);

}  // namespace entloc
