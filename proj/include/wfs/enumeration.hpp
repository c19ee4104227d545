#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wfs/transfer.hpp"

namespace wfs {

using BigInt = boost::multiprecision::cpp_int;

/// Undirected graph on Rel*(L): p and q are adjacent when p != q and each lifts
/// against the other.
struct ElevatingGraph {
  FiniteLattice lattice;
  std::vector<Bitset> adjacency;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
  bool edge(std::size_t p, std::size_t q) const { return adjacency[p].test(q); }
};

ElevatingGraph elevating_graph(const FiniteLattice& lat);

/// Every transfer system, by testing all subsets of Rel*(L). Refuses lattices
/// with more than 25 non-trivial relations.
std::vector<TransferSystem> enumerate_oracle(const FiniteLattice& lat);

struct BfsOptions {
  std::size_t cap = 10'000'000;
  std::size_t threads = 1;
};

/// Every transfer system, discovered upward from the diagonal along upper covers.
std::vector<TransferSystem> enumerate_bfs(const FiniteLattice& lat, BfsOptions opts = {});

/// Sorts into canonical order (size, then relation ids).
void sort_canonical(std::vector<TransferSystem>& systems);

struct CliqueOptions {
  std::size_t threads = 1;
  /// Stop with CapExceeded once this much wall time has passed.
  std::optional<std::chrono::milliseconds> budget;
};

/// Number of cliques, the empty clique included.
BigInt count_cliques(const std::vector<Bitset>& adjacency, CliqueOptions opts = {});
inline BigInt count_cliques(const ElevatingGraph& g, CliqueOptions opts = {}) {
  return count_cliques(g.adjacency, opts);
}

/// Calls f once per clique (as a vertex bitset), the empty clique first.
void for_each_clique(const std::vector<Bitset>& adjacency,
                     const std::function<void(const Bitset&)>& f);

struct MaxCliqueResult {
  std::size_t size = 0;
  Bitset clique;
  /// False when the time budget ran out; size is then a lower bound.
  bool complete = true;
};

/// Branch and bound with greedy colouring. A known clique can be passed as
/// `seed` so that only larger cliques are searched for.
MaxCliqueResult max_clique(const std::vector<Bitset>& adjacency,
                           std::optional<std::chrono::milliseconds> budget = std::nullopt,
                           const std::optional<Bitset>& seed = std::nullopt);
inline MaxCliqueResult max_clique(const ElevatingGraph& g,
                                  std::optional<std::chrono::milliseconds> budget = std::nullopt,
                                  const std::optional<Bitset>& seed = std::nullopt) {
  return max_clique(g.adjacency, budget, seed);
}

/// tr(s) for an elevating set s; throws NotElevating otherwise.
TransferSystem clique_to_ts(const RelSet& s);
/// Labels of all lower covers of r.
RelSet ts_to_clique(const TransferSystem& r);
bool is_elevating(const RelSet& s);

/// floor(sum_{j=0..k} C(k,j) (n/k)^j), exactly; 1 when k = 0.
BigInt upper_bound(std::size_t n, std::size_t k);
/// 2^k.
BigInt lower_bound(std::size_t k);

enum class Method { Oracle, Bfs, Clique };
const char* to_string(Method m);
std::optional<Method> parse_method(const std::string& s);

struct EnumerationReport {
  std::optional<BigInt> count;
  std::size_t relations = 0;
  std::size_t max_clique = 0;
  bool max_clique_complete = true;
  BigInt lower_bound;
  BigInt upper_bound;
  Method method = Method::Clique;
};

/// Number of transfer systems by the chosen method.
BigInt count_transfer_systems(const FiniteLattice& lat, Method method, std::size_t threads = 1,
                              std::optional<std::chrono::milliseconds> budget = std::nullopt);

/// Max clique and bounds, plus the count when `with_count` is set. The upper
/// bound only holds when the max clique search completed.
EnumerationReport bounds(const FiniteLattice& lat, bool with_count, Method method = Method::Clique,
                         std::size_t threads = 1,
                         std::optional<std::chrono::milliseconds> budget = std::nullopt,
                         const std::optional<Bitset>& seed = std::nullopt);

}  // namespace wfs
