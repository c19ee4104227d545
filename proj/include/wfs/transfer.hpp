#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wfs/bitset.hpp"
#include "wfs/lattice.hpp"

namespace wfs {

/// A set of relations of a lattice. Only non-trivial relations are stored, as a
/// bitset over Rel*(L); the diagonal is always implicitly present.
class RelSet {
 public:
  explicit RelSet(FiniteLattice lat) : lat_(std::move(lat)), bits_(lat_.relation_count()) {}
  RelSet(FiniteLattice lat, Bitset bits);

  /// Diagonal only.
  static RelSet diagonal(const FiniteLattice& lat) { return RelSet(lat); }
  /// The whole order of the lattice.
  static RelSet full(const FiniteLattice& lat);
  /// Trivial pairs are ignored; pairs that are not relations raise OutOfRange.
  static RelSet of(const FiniteLattice& lat, const std::vector<Rel>& rels);

  const FiniteLattice& lattice() const { return lat_; }
  const Bitset& bits() const { return bits_; }
  Bitset& bits() { return bits_; }

  /// Number of stored non-trivial relations.
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(Element a, Element b) const;
  bool contains(Rel r) const { return contains(r.src, r.dst); }
  bool contains_id(std::size_t id) const { return bits_.test(id); }
  void insert(Rel r);
  void insert_id(std::size_t id) { bits_.set(id); }
  void erase_id(std::size_t id) { bits_.reset(id); }
  std::vector<Rel> relations() const;

  bool is_subset_of(const RelSet& o) const { return bits_.is_subset_of(o.bits_); }

  friend bool operator==(const RelSet& a, const RelSet& b) {
    return a.bits_ == b.bits_ && a.lat_ == b.lat_;
  }

 private:
  FiniteLattice lat_;
  Bitset bits_;
};

/// Sets that are transitive and closed under pullbacks.
using TransferSystem = RelSet;
/// Sets that are transitive and closed under pushouts.
using LeftSaturatedSet = RelSet;

struct RelSetHash {
  std::size_t operator()(const RelSet& s) const { return s.bits().hash(); }
};

/// Canonical order: by size, then lexicographically on the sorted relation ids.
bool canonical_less(const RelSet& a, const RelSet& b);
bool canonical_less(const Bitset& a, const Bitset& b);

/// Throws MixedLattices unless both sets live on the same lattice.
void require_same_lattice(const RelSet& a, const RelSet& b);

/// All f with f ⧄ g for every g in r.
LeftSaturatedSet left_complement(const TransferSystem& r);
/// All g with f ⧄ g for every f in s.
TransferSystem right_complement(const LeftSaturatedSet& s);

RelSet pullback_closure(const RelSet& s);
RelSet pushout_closure(const RelSet& s);
RelSet transitive_closure(const RelSet& s);

/// Smallest transfer system containing s.
TransferSystem tr(const RelSet& s);
TransferSystem tr(const FiniteLattice& lat, Rel p);
/// Smallest left saturated set containing s.
LeftSaturatedSet ls(const RelSet& s);
LeftSaturatedSet ls(const FiniteLattice& lat, Rel p);

bool is_transitive(const RelSet& s);
bool is_pullback_closed(const RelSet& s);
bool is_pushout_closed(const RelSet& s);
bool is_transfer_system(const RelSet& s);
bool is_left_saturated(const RelSet& s);

TransferSystem meet_ts(const TransferSystem& a, const TransferSystem& b);
TransferSystem join_ts(const TransferSystem& a, const TransferSystem& b);

/// p ⊏ q, equivalently tr(p) ⊆ tr(q).
bool sqsubset(const FiniteLattice& lat, Rel p, Rel q);

/// Relations of r that are covers in the poset r ∪ Δ.
RelSet cover_rels(const TransferSystem& r);

struct LowerCover {
  Rel label;
  TransferSystem lower;
};

/// Lower covers of r in Trs(L), ordered by label.
std::vector<LowerCover> lower_covers(const TransferSystem& r);

/// r with every (u,v) satisfying p ⊏ (u,v) removed.
TransferSystem remove_above(const TransferSystem& r, Rel p);

/// Label of the cover r1 ⋖ r; throws NotACover when r1 is not a lower cover of r.
Rel join_label(const TransferSystem& r1, const TransferSystem& r);

/// {g : p ⧄ g}, the meet-irreducible partner of tr(p).
TransferSystem kappa(const FiniteLattice& lat, Rel p);

struct WfsPair {
  LeftSaturatedSet left;
  TransferSystem right;
};

WfsPair wfs_of(const TransferSystem& r);
/// Every relation of L factors as a left relation followed by a right one.
bool factorizes(const WfsPair& w);

/// `ts: (a,b) (c,d) ...` in canonical order.
std::string format_rel_set(const RelSet& s);
RelSet parse_rel_set(const FiniteLattice& lat, const std::string& text);

}  // namespace wfs
