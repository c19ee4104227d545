#include "wfs/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace wfs {

namespace {

// Greatest element of `candidates` under the order given by `down`, i.e. the
// c in candidates whose down-set contains all of candidates. Returns m if none.
Element greatest_of(const Bitset& candidates, const std::vector<Bitset>& down) {
  Element found = static_cast<Element>(down.size());
  candidates.for_each([&](std::size_t c) {
    if (found == down.size() && candidates.is_subset_of(down[c]))
      found = static_cast<Element>(c);
  });
  return found;
}

}  // namespace

FiniteLattice FiniteLattice::build(std::vector<Bitset> up, LatticeOptions opts) {
  auto impl = std::make_shared<Impl>();
  const std::size_t m = up.size();
  if (m == 0) throw Error(ErrorCode::NotALattice, "a lattice needs at least one element");
  impl->m = m;
  impl->down.assign(m, Bitset(m));
  for (std::size_t a = 0; a < m; ++a)
    up[a].for_each([&](std::size_t b) { impl->down[b].set(a); });
  impl->up = std::move(up);

  impl->meet.resize(m * m);
  impl->join.resize(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      Element mt = greatest_of(impl->down[a] & impl->down[b], impl->down);
      // The least upper bound is the greatest element in the opposite order.
      Element jn = greatest_of(impl->up[a] & impl->up[b], impl->up);
      if (mt == m || jn == m) {
        std::ostringstream os;
        os << "elements " << a << " and " << b << " have no "
           << (mt == m ? "meet" : "join");
        throw Error(ErrorCode::NotALattice, os.str());
      }
      impl->meet[a * m + b] = impl->meet[b * m + a] = mt;
      impl->join[a * m + b] = impl->join[b * m + a] = jn;
    }
  }
  impl->bottom = impl->meet[0];
  impl->top = impl->join[0];
  for (std::size_t a = 1; a < m; ++a) {
    impl->bottom = impl->meet[impl->bottom * m + a];
    impl->top = impl->join[impl->top * m + a];
  }

  // a < b is a cover when nothing lies strictly between them.
  for (std::size_t a = 0; a < m; ++a) {
    impl->up[a].for_each([&](std::size_t b) {
      if (a == b) return;
      Bitset between = impl->up[a] & impl->down[b];
      if (between.count() == 2) impl->covers.emplace_back(a, b);
    });
  }

  impl->rel_index.assign(m * m, -1);
  for (std::size_t a = 0; a < m; ++a) {
    impl->up[a].for_each([&](std::size_t b) {
      if (a == b) return;
      impl->rel_index[a * m + b] = static_cast<std::int32_t>(impl->rels.size());
      impl->rels.push_back(Rel{static_cast<Element>(a), static_cast<Element>(b)});
    });
  }
  const std::size_t n = impl->rels.size();
  if (n > kRelationCap && !opts.override_cap) {
    std::ostringstream os;
    os << n << " non-trivial relations exceeds the cap of " << kRelationCap;
    throw Error(ErrorCode::TooLarge, os.str());
  }

  impl->lifts_right_of.assign(n, Bitset(n));
  impl->lifts_left_of.assign(n, Bitset(n));
  for (std::size_t f = 0; f < n; ++f) {
    const Rel rf = impl->rels[f];
    for (std::size_t g = 0; g < n; ++g) {
      const Rel rg = impl->rels[g];
      bool square = impl->up[rf.src].test(rg.src) && impl->up[rf.dst].test(rg.dst);
      bool lift = impl->up[rf.dst].test(rg.src);
      if (!square || lift) {
        impl->lifts_right_of[f].set(g);
        impl->lifts_left_of[g].set(f);
      }
    }
  }
  return FiniteLattice(std::move(impl));
}

FiniteLattice FiniteLattice::from_covers(std::size_t m, std::span<const CoverPair> covers,
                                         LatticeOptions opts) {
  std::vector<std::vector<Element>> succ(m);
  std::vector<std::size_t> indeg(m, 0);
  for (auto [a, b] : covers) {
    if (a >= m || b >= m) {
      std::ostringstream os;
      os << "cover (" << a << "," << b << ") outside 0.." << (m ? m - 1 : 0);
      throw Error(ErrorCode::OutOfRange, os.str());
    }
    if (a == b) throw Error(ErrorCode::CyclicCovers, "self-loop at " + std::to_string(a));
    succ[a].push_back(b);
    ++indeg[b];
  }

  std::vector<Element> order;
  order.reserve(m);
  for (std::size_t v = 0; v < m; ++v)
    if (indeg[v] == 0) order.push_back(static_cast<Element>(v));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Element w : succ[order[i]])
      if (--indeg[w] == 0) order.push_back(w);
  if (order.size() != m) throw Error(ErrorCode::CyclicCovers, "cover digraph has a cycle");

  std::vector<Bitset> up(m, Bitset(m));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    up[*it].set(*it);
    for (Element w : succ[*it]) up[*it] |= up[w];
  }
  return build(std::move(up), opts);
}

FiniteLattice FiniteLattice::from_order(const std::vector<Bitset>& leq, LatticeOptions opts) {
  const std::size_t m = leq.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (leq[a].size() != m) throw Error(ErrorCode::NotALattice, "order matrix is not square");
    if (!leq[a].test(a)) throw Error(ErrorCode::NotALattice, "order is not reflexive");
  }
  for (std::size_t a = 0; a < m; ++a) {
    bool ok = true;
    leq[a].for_each([&](std::size_t b) {
      if (b != a && leq[b].test(a)) ok = false;
      if (!leq[b].is_subset_of(leq[a])) ok = false;
    });
    if (!ok) throw Error(ErrorCode::NotALattice, "relation is not a partial order");
  }
  return build(leq, opts);
}

bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
  return a.same_as(b) || a.impl_->up == b.impl_->up;
}

bool lifts_left(const FiniteLattice& lat, Rel f, Rel g) {
  const std::size_t m = lat.size();
  if (f.src >= m || f.dst >= m || g.src >= m || g.dst >= m)
    throw Error(ErrorCode::OutOfRange, "relation endpoint outside the lattice");
  if (!lat.leq(f.src, f.dst) || !lat.leq(g.src, g.dst))
    throw Error(ErrorCode::OutOfRange, "pair is not a relation of the lattice");
  bool square = lat.leq(f.src, g.src) && lat.leq(f.dst, g.dst);
  return !square || lat.leq(f.dst, g.src);
}

FiniteLattice chain(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "chain needs at least one element");
  std::vector<CoverPair> covers;
  for (Element i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return FiniteLattice::from_covers(n, covers);
}

FiniteLattice boolean(std::size_t n, LatticeOptions opts) {
  if (n > 6 && !opts.override_cap)
    throw Error(ErrorCode::TooLarge, "boolean lattices above rank 6 need the override flag");
  if (n > 20) throw Error(ErrorCode::OutOfRange, "boolean rank too large");
  const std::size_t m = std::size_t{1} << n;
  std::vector<CoverPair> covers;
  for (Element x = 0; x < m; ++x)
    for (std::size_t i = 0; i < n; ++i)
      if (!(x >> i & 1U)) covers.emplace_back(x, x | (Element{1} << i));
  std::sort(covers.begin(), covers.end());
  return FiniteLattice::from_covers(m, covers, opts);
}

FiniteLattice diamond(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "diamond needs at least one middle element");
  const Element top = static_cast<Element>(n + 1);
  std::vector<CoverPair> covers;
  for (Element i = 1; i <= n; ++i) covers.emplace_back(0, i);
  for (Element i = 1; i <= n; ++i) covers.emplace_back(i, top);
  return FiniteLattice::from_covers(n + 2, covers);
}

FiniteLattice square() { return diamond(2); }

FiniteLattice opposite(const FiniteLattice& lat) {
  std::vector<Bitset> leq;
  leq.reserve(lat.size());
  for (Element a = 0; a < lat.size(); ++a) leq.push_back(lat.down_set(a));
  return FiniteLattice::from_order(leq, {.override_cap = true});
}

FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b) {
  const std::size_t ma = a.size(), mb = b.size(), m = ma * mb;
  std::vector<Bitset> leq(m, Bitset(m));
  for (std::size_t i = 0; i < ma; ++i)
    for (std::size_t j = 0; j < mb; ++j)
      for (std::size_t k = 0; k < ma; ++k)
        for (std::size_t l = 0; l < mb; ++l)
          if (a.leq(i, k) && b.leq(j, l)) leq[i * mb + j].set(k * mb + l);
  return FiniteLattice::from_order(leq);
}

std::vector<Rel> nontrivial_relations(const FiniteLattice& lat) { return lat.relations(); }

bool is_isomorphism(const FiniteLattice& a, const FiniteLattice& b,
                    std::span<const Element> perm) {
  const std::size_t m = a.size();
  if (b.size() != m || perm.size() != m) return false;
  Bitset seen(m);
  for (Element p : perm) {
    if (p >= m || seen.test(p)) return false;
    seen.set(p);
  }
  for (Element x = 0; x < m; ++x)
    for (Element y = 0; y < m; ++y)
      if (a.leq(x, y) != b.leq(perm[x], perm[y])) return false;
  return true;
}

LatticeDocument parse_lattice_document(std::istream& in, LatticeOptions opts) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> m;
  std::vector<CoverPair> covers;
  std::set<CoverPair> seen;
  std::vector<Permutation> perms;

  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;

    auto read_ids = [&]() {
      std::vector<long long> ids;
      std::string tok;
      while (ls >> tok) {
        try {
          std::size_t used = 0;
          long long v = std::stoll(tok, &used);
          if (used != tok.size()) fail("bad integer '" + tok + "'");
          ids.push_back(v);
        } catch (const std::logic_error&) {
          fail("bad integer '" + tok + "'");
        }
      }
      return ids;
    };

    if (word == "lattice") {
      if (m) fail("duplicate lattice header");
      auto ids = read_ids();
      if (ids.size() != 1 || ids[0] < 1) fail("expected 'lattice <m>' with m >= 1");
      m = static_cast<std::size_t>(ids[0]);
    } else if (word == "cover") {
      if (!m) fail("cover before lattice header");
      auto ids = read_ids();
      if (ids.size() != 2) fail("expected 'cover <a> <b>'");
      if (ids[0] < 0 || ids[1] < 0 || static_cast<std::size_t>(ids[0]) >= *m ||
          static_cast<std::size_t>(ids[1]) >= *m)
        throw Error(ErrorCode::OutOfRange,
                    "line " + std::to_string(lineno) + ": cover endpoint out of range");
      CoverPair c{static_cast<Element>(ids[0]), static_cast<Element>(ids[1])};
      if (c.first == c.second) fail("self-loop cover");
      if (!seen.insert(c).second) fail("duplicate cover");
      covers.push_back(c);
    } else if (word == "perm") {
      if (!m) fail("perm before lattice header");
      auto ids = read_ids();
      if (ids.size() != *m) fail("perm must list exactly m images");
      Permutation p;
      Bitset hit(*m);
      for (long long v : ids) {
        if (v < 0 || static_cast<std::size_t>(v) >= *m || hit.test(v))
          fail("perm is not a permutation of 0..m-1");
        hit.set(v);
        p.push_back(static_cast<Element>(v));
      }
      perms.push_back(std::move(p));
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (!m) throw Error(ErrorCode::ParseError, "missing 'lattice <m>' header");
  return {FiniteLattice::from_covers(*m, covers, opts), std::move(perms)};
}

LatticeDocument read_lattice_file(const std::string& path, LatticeOptions opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return parse_lattice_document(in, opts);
}

void write_lattice(std::ostream& out, const FiniteLattice& lat) {
  out << "lattice " << lat.size() << '\n';
  for (auto [a, b] : lat.covers()) out << "cover " << a << ' ' << b << '\n';
}

}  // namespace wfs
