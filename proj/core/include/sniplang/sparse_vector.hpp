#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace sniplang {

/// Term-index -> weight map with no explicit zeros, stored as entries sorted
/// by index. Carrier for both raw counts and TF-IDF weights.
class SparseVector {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  SparseVector() = default;

  /// Takes entries in any order; sorts by index and drops zero weights.
  static SparseVector from_entries(std::vector<Entry> entries) {
    std::erase_if(entries, [](const Entry& e) { return e.second == 0.0; });
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    v.entries_ = std::move(entries);
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double get(std::uint32_t index) const {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), index,
        [](const Entry& e, std::uint32_t i) { return e.first < i; });
    return (it != entries_.end() && it->first == index) ? it->second : 0.0;
  }

  double l2_norm() const {
    double sum = 0.0;
    for (const auto& [index, weight] : entries_) sum += weight * weight;
    return std::sqrt(sum);
  }

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<Entry> entries_;
};

}  // namespace sniplang
