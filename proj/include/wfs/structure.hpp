#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wfs/enumeration.hpp"
#include "wfs/transfer.hpp"

namespace wfs {

/// Finite partial order as rows: leq[a] holds every b with a <= b.
struct Poset {
  std::vector<Bitset> leq;

  std::size_t size() const { return leq.size(); }
  bool le(std::size_t a, std::size_t b) const { return leq[a].test(b); }
  Poset opposite() const;
};

/// Lattice over an arbitrary dense carrier 0..n-1, without the relation
/// machinery of FiniteLattice. Used for Trs(L), congruence lattices and so on.
class AbstractLattice {
 public:
  AbstractLattice() = default;
  /// Derives meet and join from the order; throws NotALattice.
  static AbstractLattice from_order(std::vector<Bitset> leq);
  /// Trusts the given tables; meet/join are row-major n*n.
  static AbstractLattice from_tables(std::vector<Bitset> leq, std::vector<std::uint32_t> meet,
                                     std::vector<std::uint32_t> join);
  static AbstractLattice from_lattice(const FiniteLattice& lat);

  std::size_t size() const { return leq_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a].test(b); }
  std::uint32_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::uint32_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  std::uint32_t bottom() const { return bottom_; }
  std::uint32_t top() const { return top_; }
  const Bitset& up_set(std::size_t a) const { return leq_[a]; }
  const Bitset& down_set(std::size_t a) const { return geq_[a]; }

  /// Hasse edges (lower, upper), sorted.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& covers() const { return covers_; }
  const std::vector<std::uint32_t>& lower_covers(std::size_t a) const { return lower_[a]; }
  const std::vector<std::uint32_t>& upper_covers(std::size_t a) const { return upper_[a]; }

  /// Meet and join tables agree with the order.
  bool tables_consistent() const;

 private:
  void finish();

  std::vector<Bitset> leq_, geq_;
  std::vector<std::uint32_t> meet_, join_;
  std::uint32_t bottom_ = 0, top_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers_;
  std::vector<std::vector<std::uint32_t>> lower_, upper_;
};

struct HasseEdge {
  std::uint32_t lower;
  std::uint32_t upper;
  Rel label;
};

/// Trs(L) as an explicit lattice. Element i is systems[i]; systems are in
/// canonical order, so the diagonal is element 0.
struct TrsLattice {
  FiniteLattice base;
  std::vector<TransferSystem> systems;
  AbstractLattice lattice;
  std::vector<HasseEdge> edges;
  std::unordered_map<Bitset, std::uint32_t, BitsetHash> index;

  std::uint32_t index_of(const RelSet& r) const;
};

TrsLattice trs_lattice(const FiniteLattice& lat, BfsOptions opts = {});

bool is_semidistributive(const AbstractLattice& k);
bool is_join_semidistributive(const AbstractLattice& k);
bool is_meet_semidistributive(const AbstractLattice& k);
bool is_distributive(const AbstractLattice& k);

std::vector<std::uint32_t> join_irreducibles(const AbstractLattice& k);
std::vector<std::uint32_t> meet_irreducibles(const AbstractLattice& k);
/// Number of edges in a longest chain from bottom to top.
std::size_t length(const AbstractLattice& k);
bool is_extremal(const AbstractLattice& k);
/// (y ∨ x) ∧ z = y ∨ (x ∧ z) for all y < z.
bool is_left_modular(const AbstractLattice& k, std::size_t x);
bool is_trim(const AbstractLattice& k);

/// Partition of the carrier; block[i] numbers blocks by first occurrence.
struct CongruencePartition {
  std::vector<std::uint32_t> block;
  std::size_t block_count = 0;

  bool same_block(std::size_t a, std::size_t b) const { return block[a] == block[b]; }
  /// Every block of this partition lies inside a block of `coarser`.
  bool refines(const CongruencePartition& coarser) const;
  friend bool operator==(const CongruencePartition&, const CongruencePartition&) = default;
};

struct PartitionHash {
  std::size_t operator()(const CongruencePartition& p) const;
};

bool is_congruence(const AbstractLattice& k, const CongruencePartition& p);
/// Smallest congruence identifying a and b.
CongruencePartition con_of_pair(const AbstractLattice& k, std::size_t a, std::size_t b);
inline CongruencePartition con_of_edge(const AbstractLattice& k, std::pair<std::uint32_t, std::uint32_t> e) {
  return con_of_pair(k, e.first, e.second);
}
/// Refuses carriers above 500 elements.
bool is_congruence_uniform(const AbstractLattice& k);

struct CongruenceLattice {
  std::vector<CongruencePartition> congruences;
  AbstractLattice lattice;
};

/// All congruences, ordered by refinement. Refuses carriers above 60 elements.
CongruenceLattice congruence_lattice(const AbstractLattice& k);
/// No two distinct congruences share a block. Reported only, never asserted.
bool is_regular(const AbstractLattice& k);

enum class RelOrder { Sqsubset, Preceq, Containment };
/// The chosen order on Rel*(L), indexed by relation id.
Poset rel_order(const FiniteLattice& lat, RelOrder kind);

BigInt ideal_count(const Poset& p);
/// Lattice of order ideals under inclusion; ideals are returned as bitsets.
struct IdealLattice {
  std::vector<Bitset> ideals;
  AbstractLattice lattice;
};
IdealLattice ideal_lattice(const Poset& p, std::size_t cap = 100000);

struct SpineReport {
  /// Element ids of the Trs lattice, ascending.
  std::vector<std::uint32_t> by_definition;
  std::vector<std::uint32_t> by_chains;
  bool agree() const { return by_definition == by_chains; }
};

/// Systems whose pair (left, right) covers all of Rel(L), computed both from
/// the definition and as the union of longest chains.
SpineReport spine(const TrsLattice& t);
/// Elements of k lying on some chain of maximal length.
std::vector<std::uint32_t> longest_chain_elements(const AbstractLattice& k);
/// The given elements are closed under meet and join of k.
bool is_sublattice(const AbstractLattice& k, const std::vector<std::uint32_t>& elems);
AbstractLattice sublattice(const AbstractLattice& k, const std::vector<std::uint32_t>& elems);

/// Directed graph on Rel*(L): p -> q when p != q, q.src <= p.src, q.dst <= p.dst
/// and q.dst is not below p.src.
struct GaloisGraph {
  FiniteLattice lattice;
  std::vector<Bitset> arcs;
};

GaloisGraph galois_graph(const FiniteLattice& lat);

struct OrthogonalPair {
  Bitset x;
  Bitset y;
  friend bool operator==(const OrthogonalPair&, const OrthogonalPair&) = default;
};

struct MarkowskyLattice {
  std::vector<OrthogonalPair> pairs;
  AbstractLattice lattice;
};

/// Maximal orthogonal pairs of a digraph (no arc from X into Y, X ∩ Y empty),
/// ordered by inclusion of X.
MarkowskyLattice max_orthogonal_pairs(const std::vector<Bitset>& arcs, std::size_t cap = 10'000'000);
inline MarkowskyLattice max_orthogonal_pairs(const GaloisGraph& g, std::size_t cap = 10'000'000) {
  return max_orthogonal_pairs(g.arcs, cap);
}

/// Checks that R -> (R, left complement of R) is an order isomorphism from
/// Trs(L) onto the Markowsky lattice.
bool markowsky_matches(const TrsLattice& t, const MarkowskyLattice& m);

/// Backtracking isomorphism search; refuses carriers above `cap`.
std::optional<std::vector<std::uint32_t>> find_isomorphism(const AbstractLattice& a,
                                                           const AbstractLattice& b,
                                                           std::size_t cap = 12);
bool lattice_isomorphic(const AbstractLattice& a, const AbstractLattice& b, std::size_t cap = 12);
bool lattice_isomorphic(const FiniteLattice& a, const FiniteLattice& b, std::size_t cap = 12);

/// Rebuilds L from the order ⊏ on Rel*(L): the largest principal ideal is
/// L without its bottom.
FiniteLattice recover_lattice(const FiniteLattice& lat);

}  // namespace wfs
