#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wfs/bitset.hpp"
#include "wfs/error.hpp"

namespace wfs {

using Element = std::uint32_t;

/// An ordered pair src <= dst of lattice elements.
struct Rel {
  Element src = 0;
  Element dst = 0;

  bool trivial() const { return src == dst; }
  friend auto operator<=>(const Rel&, const Rel&) = default;
};

/// Dense index into the canonical (src, dst)-lexicographic list of non-trivial
/// relations of a lattice.
struct RelId {
  std::uint32_t index = 0;
  friend auto operator<=>(const RelId&, const RelId&) = default;
};

using CoverPair = std::pair<Element, Element>;

struct LatticeOptions {
  /// Lift the refusal of lattices with more than kRelationCap non-trivial relations.
  bool override_cap = false;
};

inline constexpr std::size_t kRelationCap = 4096;

/// Immutable finite lattice with precomputed order, meet/join tables and the
/// indexed set of non-trivial relations. Copies share the same storage and are
/// safe to use from several threads.
class FiniteLattice {
 public:
  static FiniteLattice from_covers(std::size_t m, std::span<const CoverPair> covers,
                                   LatticeOptions opts = {});
  /// Builds from a full order matrix (row a, column b set iff a <= b).
  static FiniteLattice from_order(const std::vector<Bitset>& leq, LatticeOptions opts = {});

  std::size_t size() const { return impl_->m; }
  bool leq(Element a, Element b) const { return impl_->up[a].test(b); }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  Element meet(Element a, Element b) const { return impl_->meet[a * impl_->m + b]; }
  Element join(Element a, Element b) const { return impl_->join[a * impl_->m + b]; }
  Element bottom() const { return impl_->bottom; }
  Element top() const { return impl_->top; }

  /// Hasse diagram edges, sorted lexicographically.
  const std::vector<CoverPair>& covers() const { return impl_->covers; }
  /// Set of b with a <= b.
  const Bitset& up_set(Element a) const { return impl_->up[a]; }
  /// Set of b with b <= a.
  const Bitset& down_set(Element a) const { return impl_->down[a]; }

  /// Rel*(L) in canonical order.
  const std::vector<Rel>& relations() const { return impl_->rels; }
  std::size_t relation_count() const { return impl_->rels.size(); }
  const Rel& relation(RelId id) const { return impl_->rels[id.index]; }
  const Rel& relation(std::size_t id) const { return impl_->rels[id]; }
  /// Dense id of (a,b), or nullopt when a == b or a is not below b.
  std::optional<RelId> rel_id(Element a, Element b) const {
    auto v = impl_->rel_index[a * impl_->m + b];
    if (v < 0) return std::nullopt;
    return RelId{static_cast<std::uint32_t>(v)};
  }
  /// Same as rel_id but returns -1 instead of nullopt.
  std::int32_t rel_index(Element a, Element b) const {
    return impl_->rel_index[a * impl_->m + b];
  }

  /// Relations g with p lifting on the left of g (p ⧄ g), as a bitset over Rel*.
  const Bitset& lifted_by(std::size_t p) const { return impl_->lifts_right_of[p]; }
  /// Relations f with f ⧄ g.
  const Bitset& lifting(std::size_t g) const { return impl_->lifts_left_of[g]; }

  /// Two handles are the same lattice when they share storage.
  bool same_as(const FiniteLattice& o) const { return impl_ == o.impl_; }
  /// Structural equality of element-wise order.
  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b);

 private:
  struct Impl {
    std::size_t m = 0;
    std::vector<Bitset> up;
    std::vector<Bitset> down;
    std::vector<Element> meet;
    std::vector<Element> join;
    std::vector<CoverPair> covers;
    Element bottom = 0;
    Element top = 0;
    std::vector<Rel> rels;
    std::vector<std::int32_t> rel_index;
    std::vector<Bitset> lifts_right_of;
    std::vector<Bitset> lifts_left_of;
  };

  explicit FiniteLattice(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static FiniteLattice build(std::vector<Bitset> up, LatticeOptions opts);

  std::shared_ptr<const Impl> impl_;
};

/// f ⧄ g: every commuting square from f to g has a diagonal filler.
bool lifts_left(const FiniteLattice& lat, Rel f, Rel g);

FiniteLattice chain(std::size_t n);
FiniteLattice boolean(std::size_t n, LatticeOptions opts = {});
FiniteLattice diamond(std::size_t n);
/// Commutative square 0 < 1,2 < 3.
FiniteLattice square();
FiniteLattice opposite(const FiniteLattice& lat);
/// Cartesian product with pairs (i, j) numbered i * |b| + j.
FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b);

/// Rel*(L) in canonical order.
std::vector<Rel> nontrivial_relations(const FiniteLattice& lat);

/// Element permutation `perm` is an isomorphism from a onto b.
bool is_isomorphism(const FiniteLattice& a, const FiniteLattice& b,
                    std::span<const Element> perm);

using Permutation = std::vector<Element>;

/// Parsed lattice document, optionally carrying permutation generators.
struct LatticeDocument {
  FiniteLattice lattice;
  std::vector<Permutation> perms;
};

/// Reads the `lattice <m>` / `cover <a> <b>` / `perm ...` text format.
LatticeDocument parse_lattice_document(std::istream& in, LatticeOptions opts = {});
LatticeDocument read_lattice_file(const std::string& path, LatticeOptions opts = {});
/// Writes `lattice <m>` followed by one `cover` line per Hasse edge.
void write_lattice(std::ostream& out, const FiniteLattice& lat);

}  // namespace wfs
