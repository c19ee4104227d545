#include "wfs/transfer.hpp"

#include <bit>
#include <regex>
#include <sstream>

namespace wfs {

namespace {

// Strict successor rows: rows[a] holds b with (a,b) stored.
std::vector<Bitset> to_rows(const RelSet& s) {
  const auto& lat = s.lattice();
  std::vector<Bitset> rows(lat.size(), Bitset(lat.size()));
  s.bits().for_each([&](std::size_t id) {
    const Rel& r = lat.relation(id);
    rows[r.src].set(r.dst);
  });
  return rows;
}

RelSet from_rows(const FiniteLattice& lat, const std::vector<Bitset>& rows) {
  RelSet out(lat);
  for (Element a = 0; a < rows.size(); ++a)
    rows[a].for_each([&](std::size_t b) {
      if (b != a) out.insert_id(static_cast<std::size_t>(lat.rel_index(a, b)));
    });
  return out;
}

}  // namespace

RelSet::RelSet(FiniteLattice lat, Bitset bits) : lat_(std::move(lat)), bits_(std::move(bits)) {
  if (bits_.size() != lat_.relation_count())
    throw Error(ErrorCode::OutOfRange, "bitset width does not match the lattice");
}

RelSet RelSet::full(const FiniteLattice& lat) {
  return RelSet(lat, Bitset::full(lat.relation_count()));
}

RelSet RelSet::of(const FiniteLattice& lat, const std::vector<Rel>& rels) {
  RelSet out(lat);
  for (Rel r : rels) out.insert(r);
  return out;
}

bool RelSet::contains(Element a, Element b) const {
  if (a >= lat_.size() || b >= lat_.size()) return false;
  if (a == b) return true;
  auto idx = lat_.rel_index(a, b);
  return idx >= 0 && bits_.test(static_cast<std::size_t>(idx));
}

void RelSet::insert(Rel r) {
  if (r.src >= lat_.size() || r.dst >= lat_.size() || !lat_.leq(r.src, r.dst)) {
    std::ostringstream os;
    os << "(" << r.src << "," << r.dst << ") is not a relation of the lattice";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  if (r.trivial()) return;
  bits_.set(static_cast<std::size_t>(lat_.rel_index(r.src, r.dst)));
}

std::vector<Rel> RelSet::relations() const {
  std::vector<Rel> out;
  bits_.for_each([&](std::size_t id) { out.push_back(lat_.relation(id)); });
  return out;
}

bool canonical_less(const Bitset& a, const Bitset& b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  for (std::size_t w = 0; w < a.word_count(); ++w) {
    auto diff = a.data()[w] ^ b.data()[w];
    if (diff) return (a.data()[w] >> std::countr_zero(diff)) & 1U;
  }
  return false;
}

bool canonical_less(const RelSet& a, const RelSet& b) {
  return canonical_less(a.bits(), b.bits());
}

void require_same_lattice(const RelSet& a, const RelSet& b) {
  if (!(a.lattice() == b.lattice()))
    throw Error(ErrorCode::MixedLattices, "relation sets belong to different lattices");
}

LeftSaturatedSet left_complement(const TransferSystem& r) {
  const auto& lat = r.lattice();
  Bitset acc = Bitset::full(lat.relation_count());
  r.bits().for_each([&](std::size_t g) { acc &= lat.lifting(g); });
  return RelSet(lat, std::move(acc));
}

TransferSystem right_complement(const LeftSaturatedSet& s) {
  const auto& lat = s.lattice();
  Bitset acc = Bitset::full(lat.relation_count());
  s.bits().for_each([&](std::size_t f) { acc &= lat.lifted_by(f); });
  return RelSet(lat, std::move(acc));
}

RelSet pullback_closure(const RelSet& s) {
  const auto& lat = s.lattice();
  RelSet out = s;
  s.bits().for_each([&](std::size_t id) {
    const Rel r = lat.relation(id);
    lat.down_set(r.dst).for_each([&](std::size_t w) {
      Element x = lat.meet(r.src, static_cast<Element>(w));
      if (x != w) out.insert_id(static_cast<std::size_t>(lat.rel_index(x, w)));
    });
  });
  return out;
}

RelSet pushout_closure(const RelSet& s) {
  const auto& lat = s.lattice();
  RelSet out = s;
  s.bits().for_each([&](std::size_t id) {
    const Rel r = lat.relation(id);
    lat.up_set(r.src).for_each([&](std::size_t w) {
      Element y = lat.join(r.dst, static_cast<Element>(w));
      if (y != w) out.insert_id(static_cast<std::size_t>(lat.rel_index(w, y)));
    });
  });
  return out;
}

RelSet transitive_closure(const RelSet& s) {
  auto rows = to_rows(s);
  // Warshall over element rows.
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (auto& row : rows)
      if (row.test(k)) row |= rows[k];
  return from_rows(s.lattice(), rows);
}

TransferSystem tr(const RelSet& s) { return transitive_closure(pullback_closure(s)); }

TransferSystem tr(const FiniteLattice& lat, Rel p) { return tr(RelSet::of(lat, {p})); }

LeftSaturatedSet ls(const RelSet& s) { return transitive_closure(pushout_closure(s)); }

LeftSaturatedSet ls(const FiniteLattice& lat, Rel p) { return ls(RelSet::of(lat, {p})); }

bool is_transitive(const RelSet& s) { return transitive_closure(s) == s; }
bool is_pullback_closed(const RelSet& s) { return pullback_closure(s) == s; }
bool is_pushout_closed(const RelSet& s) { return pushout_closure(s) == s; }
bool is_transfer_system(const RelSet& s) { return is_pullback_closed(s) && is_transitive(s); }
bool is_left_saturated(const RelSet& s) { return is_pushout_closed(s) && is_transitive(s); }

TransferSystem meet_ts(const TransferSystem& a, const TransferSystem& b) {
  require_same_lattice(a, b);
  return RelSet(a.lattice(), a.bits() & b.bits());
}

TransferSystem join_ts(const TransferSystem& a, const TransferSystem& b) {
  require_same_lattice(a, b);
  return transitive_closure(RelSet(a.lattice(), a.bits() | b.bits()));
}

bool sqsubset(const FiniteLattice& lat, Rel p, Rel q) {
  return lat.leq(p.dst, q.dst) && p.src == lat.meet(q.src, p.dst);
}

RelSet cover_rels(const TransferSystem& r) {
  const auto& lat = r.lattice();
  auto rows = to_rows(r);
  RelSet out(lat);
  r.bits().for_each([&](std::size_t id) {
    const Rel p = lat.relation(id);
    bool cover = true;
    rows[p.src].for_each([&](std::size_t c) {
      if (cover && c != p.dst && rows[c].test(p.dst)) cover = false;
    });
    if (cover) out.insert_id(id);
  });
  return out;
}

TransferSystem remove_above(const TransferSystem& r, Rel p) {
  const auto& lat = r.lattice();
  RelSet out = r;
  r.bits().for_each([&](std::size_t id) {
    if (sqsubset(lat, p, lat.relation(id))) out.erase_id(id);
  });
  return out;
}

std::vector<LowerCover> lower_covers(const TransferSystem& r) {
  const auto& lat = r.lattice();
  const auto covers = cover_rels(r).relations();
  std::vector<LowerCover> out;
  for (const Rel& p : covers) {
    bool maximal = true;
    for (const Rel& q : covers)
      if (q != p && sqsubset(lat, p, q)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back({p, remove_above(r, p)});
  }
  return out;
}

Rel join_label(const TransferSystem& r1, const TransferSystem& r) {
  require_same_lattice(r1, r);
  if (!r1.is_subset_of(r) || r1 == r)
    throw Error(ErrorCode::NotACover, "first system is not strictly below the second");
  RelSet diff(r.lattice(), r.bits() & left_complement(r1).bits());
  if (diff.size() != 1)
    throw Error(ErrorCode::NotACover,
                "expected one new relation lifting against the lower system, found " +
                    std::to_string(diff.size()));
  Rel label = r.lattice().relation(diff.bits().first());
  if (!(remove_above(r, label) == r1))
    throw Error(ErrorCode::NotACover, "removing the candidate label does not give the lower system");
  return label;
}

TransferSystem kappa(const FiniteLattice& lat, Rel p) {
  auto id = lat.rel_id(p.src, p.dst);
  if (!id) throw Error(ErrorCode::OutOfRange, "kappa needs a non-trivial relation");
  return RelSet(lat, lat.lifted_by(id->index));
}

WfsPair wfs_of(const TransferSystem& r) { return {left_complement(r), r}; }

bool factorizes(const WfsPair& w) {
  const auto& lat = w.right.lattice();
  for (const Rel& rel : lat.relations()) {
    bool found = false;
    for (Element y = 0; y < lat.size() && !found; ++y)
      found = w.left.contains(rel.src, y) && w.right.contains(y, rel.dst);
    if (!found) return false;
  }
  return true;
}

std::string format_rel_set(const RelSet& s) {
  std::ostringstream os;
  os << "ts:";
  for (const Rel& r : s.relations()) os << " (" << r.src << "," << r.dst << ")";
  return os.str();
}

RelSet parse_rel_set(const FiniteLattice& lat, const std::string& text) {
  static const std::regex header(R"(^\s*ts:)");
  static const std::regex pair(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::smatch m;
  if (!std::regex_search(text, m, header))
    throw Error(ErrorCode::ParseError, "expected 'ts:' prefix");
  std::string rest = m.suffix();
  RelSet out(lat);
  auto it = std::sregex_iterator(rest.begin(), rest.end(), pair);
  std::string leftover = std::regex_replace(rest, pair, "");
  if (leftover.find_first_not_of(" \t\r\n") != std::string::npos)
    throw Error(ErrorCode::ParseError, "unexpected text in relation list");
  for (; it != std::sregex_iterator(); ++it) {
    auto a = std::stoul((*it)[1]);
    auto b = std::stoul((*it)[2]);
    out.insert(Rel{static_cast<Element>(a), static_cast<Element>(b)});
  }
  return out;
}

}  // namespace wfs
