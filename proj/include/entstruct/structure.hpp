#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entstruct/errors.hpp"

namespace entstruct {

// Ordered block sizes summing to n. There are exactly 2^(n-1) of these.
struct Composition {
  int n = 0;
  std::vector<int> blocks;
};

// (intactness m, depth d) plus the dense class index for the system size.
struct StructureLabel {
  int intactness = 0;
  int depth = 0;
  int class_index = 0;
};

// All compositions of n in lexicographic order on the block lists.
// Enumerated by the binary mask over the n-1 gap positions (set bit = cut),
// which is cheaper than the recursive concatenate-and-dedup construction;
// the test suite proves set equality against that recursion.
inline std::vector<Composition> enumerate_compositions(int n) {
  if (n < 1) throw ParameterError("enumerate_compositions: n must be >= 1");
  if (n > 62) throw ParameterError("enumerate_compositions: n too large");
  std::vector<Composition> out;
  out.reserve(std::size_t(1) << (n - 1));
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
    Composition c;
    c.n = n;
    int run = 1;
    for (int gap = 0; gap < n - 1; ++gap) {
      if (mask & (std::uint64_t(1) << gap)) {
        c.blocks.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    c.blocks.push_back(run);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const Composition& a, const Composition& b) { return a.blocks < b.blocks; });
  return out;
}

// All feasible (m, d): ceil(n/m) <= d <= n - m + 1, ascending lexicographic.
// The table length is the classifier's output dimension for this n.
inline std::vector<std::pair<int, int>> class_table(int n) {
  if (n < 1) throw ParameterError("class_table: n must be >= 1");
  std::vector<std::pair<int, int>> table;
  for (int m = 1; m <= n; ++m) {
    const int d_lo = (n + m - 1) / m;  // ceil(n/m)
    const int d_hi = n - m + 1;
    for (int d = d_lo; d <= d_hi; ++d) table.emplace_back(m, d);
  }
  return table;
}

inline int class_index_of(int n, int m, int d) {
  const auto table = class_table(n);
  const auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(m, d));
  if (it == table.end() || *it != std::make_pair(m, d))
    throw ParameterError("class_index_of: (" + std::to_string(m) + ", " + std::to_string(d) +
                         ") is not a feasible pair for n = " + std::to_string(n));
  return int(it - table.begin());
}

// Intactness = block count, depth = largest block.
inline StructureLabel label_of(const Composition& c) {
  if (c.blocks.empty()) throw ParameterError("label_of: empty composition");
  int sum = 0, depth = 0;
  for (int b : c.blocks) {
    if (b < 1) throw ParameterError("label_of: block sizes must be >= 1");
    sum += b;
    depth = std::max(depth, b);
  }
  if (sum != c.n) throw ParameterError("label_of: blocks do not sum to n");
  const int m = int(c.blocks.size());
  return StructureLabel{m, depth, class_index_of(c.n, m, depth)};
}

// Closed-form class count (n^2 + 3n)/2 - 1 - sum_i ceil(n/i). Kept as a
// reference only: it undercounts the enumerated table by exactly one for
// every n, and the enumeration is what labels the data. A regression test
// pins the off-by-one.
inline long long class_count_closed_form(int n) {
  if (n < 1) throw ParameterError("class_count_closed_form: n must be >= 1");
  long long ceil_sum = 0;
  for (int i = 1; i <= n; ++i) ceil_sum += (n + i - 1) / i;
  return (static_cast<long long>(n) * n + 3LL * n) / 2 - 1 - ceil_sum;
}

// FNV-1a over the (m, d) pairs; stamped into model and dataset metadata so
// stale label maps are rejected on load.
inline std::uint64_t class_table_hash(int n) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  feed(std::uint64_t(n));
  for (const auto& [m, d] : class_table(n)) {
    feed(std::uint64_t(m));
    feed(std::uint64_t(d));
  }
  return h;
}

}  // namespace entstruct
