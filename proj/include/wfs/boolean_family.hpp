#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wfs/enumeration.hpp"

namespace wfs {

/// The system on boolean(n) where X <= Y iff X = Y, or X ⊆ Y and |X| + |Y| <= k.
struct RkSystem {
  std::size_t n = 0;
  std::size_t k = 0;
  TransferSystem system;
};

/// Throws OutOfRange unless k <= 2n - 1.
RkSystem rk_system(std::size_t n, std::size_t k);

/// Exact binomial, 0 outside 0 <= b <= a.
BigInt binomial(long a, long b);

/// Number of lower covers of rk_system(n, k) in Trs(B_n), by closed form.
BigInt rk_lower_cover_count(std::size_t n, std::size_t k);
/// The same, counted on the built system.
std::size_t rk_lower_cover_count_direct(std::size_t n, std::size_t k);

/// Largest entry of row n of the triangle: a lower bound for the largest clique
/// of elevating_graph(boolean(n)).
BigInt mcov_lower_bound(std::size_t n);

/// Threshold k at which row n of the triangle peaks: n for odd n, n + 1 otherwise.
std::size_t mcov_threshold(std::size_t n);
/// Lower-cover labels of rk_system(n, mcov_threshold(n)), an elevating set of
/// size mcov_lower_bound(n), as a vertex set of elevating_graph(boolean(n)).
Bitset mcov_seed(std::size_t n);

/// 3^n - 2^n, the number of non-trivial relations of B_n.
BigInt jirr_count(std::size_t n);
/// Edges of elevating_graph(boolean(n)).
BigInt edge_count(std::size_t n);
/// 2^(n+1) + n transfer systems on diamond(n).
BigInt diamond_count(std::size_t n);

struct TriangleEntry {
  std::size_t n = 0;
  std::size_t k = 0;
  BigInt formula;
  std::optional<std::size_t> direct;
};

/// Row n (k = 1 .. 2n-1); `direct` is filled in when requested.
std::vector<TriangleEntry> triangle_row(std::size_t n, bool with_direct);

/// The elevating graph of diamond(n) is two complete graphs on the (0,i) and
/// the (i,top), joined by the matching (0,i) -- (i,top), plus (0,top) isolated.
bool diamond_graph_has_expected_shape(std::size_t n);

}  // namespace wfs
