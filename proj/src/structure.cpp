#include "wfs/structure.hpp"
#include "wfs/parallel.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace wfs {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

CongruencePartition normalize(UnionFind& uf, std::size_t n) {
  CongruencePartition p;
  p.block.resize(n);
  std::vector<std::int64_t> id(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = uf.find(i);
    if (id[r] < 0) id[r] = static_cast<std::int64_t>(p.block_count++);
    p.block[i] = static_cast<std::uint32_t>(id[r]);
  }
  return p;
}

std::vector<Bitset> transpose(const std::vector<Bitset>& rows) {
  const std::size_t n = rows.size();
  std::vector<Bitset> out(n, Bitset(n));
  for (std::size_t a = 0; a < n; ++a) rows[a].for_each([&](std::size_t b) { out[b].set(a); });
  return out;
}

// The c in `candidates` whose row contains all of them, i.e. the largest
// candidate under the order whose down-sets are `down`.
std::size_t largest(const Bitset& candidates, const std::vector<Bitset>& down,
                    const std::vector<std::size_t>& down_size) {
  std::size_t best = Bitset::npos, best_size = 0;
  candidates.for_each([&](std::size_t c) {
    if (best == Bitset::npos || down_size[c] > best_size) best = c, best_size = down_size[c];
  });
  if (best == Bitset::npos || !candidates.is_subset_of(down[best])) return Bitset::npos;
  return best;
}

// Elements of k ordered so that every element comes after everything below it.
std::vector<std::uint32_t> by_height(const AbstractLattice& k) {
  std::vector<std::uint32_t> order(k.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return k.down_set(a).count() < k.down_set(b).count();
  });
  return order;
}

// Longest chain lengths from the bottom to each element.
std::vector<std::size_t> heights_from_bottom(const AbstractLattice& k) {
  std::vector<std::size_t> h(k.size(), 0);
  for (auto x : by_height(k))
    for (auto y : k.lower_covers(x)) h[x] = std::max(h[x], h[y] + 1);
  return h;
}

std::vector<std::size_t> heights_to_top(const AbstractLattice& k) {
  std::vector<std::size_t> h(k.size(), 0);
  auto order = by_height(k);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (auto y : k.upper_covers(*it)) h[*it] = std::max(h[*it], h[y] + 1);
  return h;
}

CongruencePartition join_partitions(const CongruencePartition& a, const CongruencePartition& b) {
  const std::size_t n = a.block.size();
  UnionFind uf(n);
  std::vector<std::int64_t> first_a(a.block_count, -1), first_b(b.block_count, -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto& fa = first_a[a.block[i]];
    if (fa < 0) fa = static_cast<std::int64_t>(i); else uf.unite(fa, i);
    auto& fb = first_b[b.block[i]];
    if (fb < 0) fb = static_cast<std::int64_t>(i); else uf.unite(fb, i);
  }
  return normalize(uf, n);
}

std::vector<Bitset> blocks_of(const CongruencePartition& p) {
  std::vector<Bitset> out(p.block_count, Bitset(p.block.size()));
  for (std::size_t i = 0; i < p.block.size(); ++i) out[p.block[i]].set(i);
  return out;
}

}  // namespace

Poset Poset::opposite() const { return Poset{transpose(leq)}; }

AbstractLattice AbstractLattice::from_order(std::vector<Bitset> leq) {
  const std::size_t n = leq.size();
  if (n == 0) throw Error(ErrorCode::NotALattice, "empty carrier");
  for (std::size_t a = 0; a < n; ++a) {
    if (leq[a].size() != n || !leq[a].test(a))
      throw Error(ErrorCode::NotALattice, "order is not reflexive");
    bool ok = true;
    leq[a].for_each([&](std::size_t b) {
      if (b != a && leq[b].test(a)) ok = false;
      if (!leq[b].is_subset_of(leq[a])) ok = false;
    });
    if (!ok) throw Error(ErrorCode::NotALattice, "relation is not a partial order");
  }
  AbstractLattice k;
  k.geq_ = transpose(leq);
  k.leq_ = std::move(leq);
  std::vector<std::size_t> down_size(n), up_size(n);
  for (std::size_t a = 0; a < n; ++a) down_size[a] = k.geq_[a].count(), up_size[a] = k.leq_[a].count();
  k.meet_.resize(n * n);
  k.join_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      auto m = largest(k.geq_[a] & k.geq_[b], k.geq_, down_size);
      auto j = largest(k.leq_[a] & k.leq_[b], k.leq_, up_size);
      if (m == Bitset::npos || j == Bitset::npos)
        throw Error(ErrorCode::NotALattice, "elements " + std::to_string(a) + " and " +
                                                std::to_string(b) + " lack a meet or join");
      k.meet_[a * n + b] = k.meet_[b * n + a] = static_cast<std::uint32_t>(m);
      k.join_[a * n + b] = k.join_[b * n + a] = static_cast<std::uint32_t>(j);
    }
  k.finish();
  return k;
}

AbstractLattice AbstractLattice::from_tables(std::vector<Bitset> leq, std::vector<std::uint32_t> meet,
                                             std::vector<std::uint32_t> join) {
  AbstractLattice k;
  k.geq_ = transpose(leq);
  k.leq_ = std::move(leq);
  k.meet_ = std::move(meet);
  k.join_ = std::move(join);
  k.finish();
  return k;
}

AbstractLattice AbstractLattice::from_lattice(const FiniteLattice& lat) {
  const std::size_t n = lat.size();
  std::vector<Bitset> leq;
  std::vector<std::uint32_t> meet(n * n), join(n * n);
  for (Element a = 0; a < n; ++a) {
    leq.push_back(lat.up_set(a));
    for (Element b = 0; b < n; ++b) meet[a * n + b] = lat.meet(a, b), join[a * n + b] = lat.join(a, b);
  }
  return from_tables(std::move(leq), std::move(meet), std::move(join));
}

void AbstractLattice::finish() {
  const std::size_t n = leq_.size();
  bottom_ = top_ = 0;
  for (std::size_t a = 1; a < n; ++a) {
    bottom_ = meet(bottom_, a);
    top_ = join(top_, a);
  }
  covers_.clear();
  lower_.assign(n, {});
  upper_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a)
    leq_[a].for_each([&](std::size_t b) {
      if (a != b && (leq_[a] & geq_[b]).count() == 2) {
        covers_.emplace_back(a, b);
        upper_[a].push_back(static_cast<std::uint32_t>(b));
        lower_[b].push_back(static_cast<std::uint32_t>(a));
      }
    });
}

bool AbstractLattice::tables_consistent() const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto m = meet(a, b), j = join(a, b);
      if (!leq(m, a) || !leq(m, b) || !(geq_[a] & geq_[b]).is_subset_of(geq_[m])) return false;
      if (!leq(a, j) || !leq(b, j) || !(leq_[a] & leq_[b]).is_subset_of(leq_[j])) return false;
    }
  return true;
}

std::uint32_t TrsLattice::index_of(const RelSet& r) const {
  auto it = index.find(r.bits());
  if (it == index.end()) throw Error(ErrorCode::OutOfRange, "not a transfer system of this lattice");
  return it->second;
}

TrsLattice trs_lattice(const FiniteLattice& lat, BfsOptions opts) {
  TrsLattice t{lat, enumerate_bfs(lat, opts), {}, {}, {}};
  const std::size_t n = t.systems.size();
  for (std::size_t i = 0; i < n; ++i) t.index.emplace(t.systems[i].bits(), static_cast<std::uint32_t>(i));

  std::vector<Bitset> leq(n, Bitset(n));
  std::vector<std::uint32_t> meet(n * n), join(n * n);
  parallel_for(n, opts.threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t.systems[i].is_subset_of(t.systems[j])) leq[i].set(j);
      meet[i * n + j] = t.index_of(meet_ts(t.systems[i], t.systems[j]));
      join[i * n + j] = t.index_of(join_ts(t.systems[i], t.systems[j]));
    }
  });
  t.lattice = AbstractLattice::from_tables(std::move(leq), std::move(meet), std::move(join));
  for (auto [lo, hi] : t.lattice.covers())
    t.edges.push_back({lo, hi, join_label(t.systems[lo], t.systems[hi])});
  return t;
}

bool is_join_semidistributive(const AbstractLattice& k) {
  // a ∨ b = a ∨ c = v for every b in a bucket; the law holds for the bucket
  // exactly when a ∨ (meet of the bucket) is still v.
  const std::size_t n = k.size();
  std::vector<std::int64_t> bucket_meet(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(bucket_meet.begin(), bucket_meet.end(), -1);
    for (std::size_t b = 0; b < n; ++b) {
      auto v = k.join(a, b);
      bucket_meet[v] = bucket_meet[v] < 0 ? static_cast<std::int64_t>(b)
                                          : static_cast<std::int64_t>(k.meet(bucket_meet[v], b));
    }
    for (std::size_t v = 0; v < n; ++v)
      if (bucket_meet[v] >= 0 && k.join(a, bucket_meet[v]) != v) return false;
  }
  return true;
}

bool is_meet_semidistributive(const AbstractLattice& k) {
  const std::size_t n = k.size();
  std::vector<std::int64_t> bucket_join(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(bucket_join.begin(), bucket_join.end(), -1);
    for (std::size_t b = 0; b < n; ++b) {
      auto v = k.meet(a, b);
      bucket_join[v] = bucket_join[v] < 0 ? static_cast<std::int64_t>(b)
                                          : static_cast<std::int64_t>(k.join(bucket_join[v], b));
    }
    for (std::size_t v = 0; v < n; ++v)
      if (bucket_join[v] >= 0 && k.meet(a, bucket_join[v]) != v) return false;
  }
  return true;
}

bool is_semidistributive(const AbstractLattice& k) {
  return is_join_semidistributive(k) && is_meet_semidistributive(k);
}

bool is_distributive(const AbstractLattice& k) {
  const std::size_t n = k.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (k.meet(a, k.join(b, c)) != k.join(k.meet(a, b), k.meet(a, c))) return false;
  return true;
}

std::vector<std::uint32_t> join_irreducibles(const AbstractLattice& k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < k.size(); ++a)
    if (k.lower_covers(a).size() == 1) out.push_back(a);
  return out;
}

std::vector<std::uint32_t> meet_irreducibles(const AbstractLattice& k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a < k.size(); ++a)
    if (k.upper_covers(a).size() == 1) out.push_back(a);
  return out;
}

std::size_t length(const AbstractLattice& k) { return heights_from_bottom(k)[k.top()]; }

bool is_extremal(const AbstractLattice& k) {
  auto len = length(k);
  return join_irreducibles(k).size() == len && meet_irreducibles(k).size() == len;
}

bool is_left_modular(const AbstractLattice& k, std::size_t x) {
  const std::size_t n = k.size();
  for (std::size_t y = 0; y < n; ++y) {
    auto yx = k.join(y, x);
    bool ok = true;
    k.up_set(y).for_each([&](std::size_t z) {
      if (ok && z != y && k.meet(yx, z) != k.join(y, k.meet(x, z))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool is_trim(const AbstractLattice& k) {
  if (!is_extremal(k)) return false;
  const std::size_t n = k.size();
  // Longest run of covers from the bottom through left-modular elements only.
  std::vector<std::int64_t> best(n, -1);
  for (auto x : by_height(k)) {
    if (!is_left_modular(k, x)) continue;
    if (x == k.bottom()) {
      best[x] = 0;
      continue;
    }
    for (auto y : k.lower_covers(x))
      if (best[y] >= 0) best[x] = std::max(best[x], best[y] + 1);
  }
  return best[k.top()] == static_cast<std::int64_t>(length(k));
}

bool CongruencePartition::refines(const CongruencePartition& coarser) const {
  std::vector<std::int64_t> image(block_count, -1);
  for (std::size_t i = 0; i < block.size(); ++i) {
    auto& im = image[block[i]];
    if (im < 0) im = coarser.block[i];
    else if (im != coarser.block[i]) return false;
  }
  return true;
}

std::size_t PartitionHash::operator()(const CongruencePartition& p) const {
  std::size_t h = p.block.size();
  for (auto b : p.block) h = h * 1000003u ^ b;
  return h;
}

bool is_congruence(const AbstractLattice& k, const CongruencePartition& p) {
  const std::size_t n = k.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!p.same_block(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (!p.same_block(k.meet(x, z), k.meet(y, z)) || !p.same_block(k.join(x, z), k.join(y, z)))
          return false;
    }
  return true;
}

CongruencePartition con_of_pair(const AbstractLattice& k, std::size_t a, std::size_t b) {
  const std::size_t n = k.size();
  UnionFind uf(n);
  // Each successful merge is queued; compatibility of the merged pairs implies
  // compatibility of whole classes, as classes are chains of merged pairs.
  std::vector<std::pair<std::size_t, std::size_t>> work;
  if (uf.unite(a, b)) work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (std::size_t z = 0; z < n; ++z) {
      std::size_t mx = k.meet(x, z), my = k.meet(y, z);
      if (uf.unite(mx, my)) work.emplace_back(mx, my);
      std::size_t jx = k.join(x, z), jy = k.join(y, z);
      if (uf.unite(jx, jy)) work.emplace_back(jx, jy);
    }
  }
  return normalize(uf, n);
}

bool is_congruence_uniform(const AbstractLattice& k) {
  if (k.size() > 500)
    throw Error(ErrorCode::TooLarge, "congruence uniformity check is limited to 500 elements");
  std::unordered_map<CongruencePartition, std::size_t, PartitionHash> ids;
  std::vector<std::size_t> edge_con;
  for (const auto& e : k.covers()) {
    auto [it, fresh] = ids.emplace(con_of_edge(k, e), ids.size());
    edge_con.push_back(it->second);
  }
  const std::size_t distinct = ids.size();

  auto id_of_edge = [&](std::uint32_t lo, std::uint32_t hi) {
    auto pos = std::lower_bound(k.covers().begin(), k.covers().end(), std::make_pair(lo, hi));
    return edge_con[static_cast<std::size_t>(pos - k.covers().begin())];
  };
  std::vector<bool> hit_j(distinct, false), hit_m(distinct, false);
  auto jirr = join_irreducibles(k);
  auto mirr = meet_irreducibles(k);
  if (jirr.size() != distinct || mirr.size() != distinct) return false;
  for (auto j : jirr) {
    auto id = id_of_edge(k.lower_covers(j).front(), j);
    if (hit_j[id]) return false;
    hit_j[id] = true;
  }
  for (auto m : mirr) {
    auto id = id_of_edge(m, k.upper_covers(m).front());
    if (hit_m[id]) return false;
    hit_m[id] = true;
  }
  return true;
}

CongruenceLattice congruence_lattice(const AbstractLattice& k) {
  const std::size_t n = k.size();
  if (n > 60) throw Error(ErrorCode::TooLarge, "congruence lattice is limited to 60 elements");

  // Every congruence is a join of edge congruences.
  std::vector<CongruencePartition> gens;
  {
    std::unordered_set<CongruencePartition, PartitionHash> seen;
    for (const auto& e : k.covers()) {
      auto c = con_of_edge(k, e);
      if (seen.insert(c).second) gens.push_back(std::move(c));
    }
  }
  UnionFind trivial_uf(n);
  std::vector<CongruencePartition> all{normalize(trivial_uf, n)};
  std::unordered_set<CongruencePartition, PartitionHash> seen(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& g : gens) {
      auto j = join_partitions(all[i], g);
      if (seen.insert(j).second) all.push_back(std::move(j));
    }

  std::sort(all.begin(), all.end(), [](const CongruencePartition& a, const CongruencePartition& b) {
    if (a.block_count != b.block_count) return a.block_count > b.block_count;
    return a.block < b.block;
  });
  const std::size_t m = all.size();
  std::vector<Bitset> leq(m, Bitset(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (all[a].refines(all[b])) leq[a].set(b);
  return {std::move(all), AbstractLattice::from_order(std::move(leq))};
}

bool is_regular(const AbstractLattice& k) {
  auto cl = congruence_lattice(k);
  std::vector<std::vector<Bitset>> blocks;
  for (const auto& c : cl.congruences) blocks.push_back(blocks_of(c));
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a + 1; b < blocks.size(); ++b)
      for (const auto& x : blocks[a])
        for (const auto& y : blocks[b])
          if (x == y) return false;
  return true;
}

Poset rel_order(const FiniteLattice& lat, RelOrder kind) {
  const auto& rels = lat.relations();
  const std::size_t n = rels.size();
  Poset p{std::vector<Bitset>(n, Bitset(n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rel r = rels[i], s = rels[j];
      bool le = false;
      switch (kind) {
        case RelOrder::Sqsubset: le = sqsubset(lat, r, s); break;
        case RelOrder::Preceq: le = lat.leq(s.src, r.src) && lat.leq(s.dst, r.dst); break;
        case RelOrder::Containment: le = lat.leq(s.src, r.src) && lat.leq(r.dst, s.dst); break;
      }
      if (le) p.leq[i].set(j);
    }
  return p;
}

namespace {

class IdealCounter {
 public:
  explicit IdealCounter(const Poset& p) : up_(p.leq), down_(transpose(p.leq)) {}

  // Ideals of the subposet on `s`: either x is missing, and then so is all of
  // its up-set, or x is present together with its whole down-set.
  BigInt count(const Bitset& s) {
    if (s.none()) return 1;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;

    Bitset component = component_of(s, s.first());
    BigInt result;
    if (!(component == s)) {
      result = count(component) * count(s - component);
    } else {
      std::size_t pick = Bitset::npos, best = 0;
      bool antichain = true;
      s.for_each([&](std::size_t x) {
        std::size_t deg = (up_[x] & s).count() + (down_[x] & s).count();
        if (deg > 2) antichain = false;
        if (pick == Bitset::npos || deg > best) pick = x, best = deg;
      });
      if (antichain) {
        result = BigInt(1) << s.count();
      } else {
        result = count(s - up_[pick]) + count(s - down_[pick]);
      }
    }
    memo_.emplace(s, result);
    return result;
  }

 private:
  Bitset component_of(const Bitset& s, std::size_t start) const {
    Bitset seen(s.size()), frontier(s.size());
    seen.set(start);
    frontier.set(start);
    while (frontier.any()) {
      Bitset next(s.size());
      frontier.for_each([&](std::size_t x) { next |= (up_[x] | down_[x]) & s; });
      next -= seen;
      seen |= next;
      frontier = std::move(next);
    }
    return seen;
  }

  std::vector<Bitset> up_, down_;
  std::unordered_map<Bitset, BigInt, BitsetHash> memo_;
};

}  // namespace

BigInt ideal_count(const Poset& p) {
  IdealCounter c(p);
  return c.count(Bitset::full(p.size()));
}

IdealLattice ideal_lattice(const Poset& p, std::size_t cap) {
  const std::size_t n = p.size();
  auto down = transpose(p.leq);
  std::unordered_set<Bitset, BitsetHash> seen{Bitset(n)};
  std::vector<Bitset> ideals{Bitset(n)};
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t x = 0; x < n; ++x) {
      if (ideals[i].test(x)) continue;
      Bitset below = down[x];
      below.reset(x);
      if (!below.is_subset_of(ideals[i])) continue;
      Bitset next = ideals[i];
      next.set(x);
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " ideals");
        ideals.push_back(std::move(next));
      }
    }
  std::sort(ideals.begin(), ideals.end(),
            [](const Bitset& a, const Bitset& b) { return canonical_less(a, b); });
  std::unordered_map<Bitset, std::uint32_t, BitsetHash> index;
  for (std::size_t i = 0; i < ideals.size(); ++i) index.emplace(ideals[i], static_cast<std::uint32_t>(i));
  const std::size_t m = ideals.size();
  std::vector<Bitset> leq(m, Bitset(m));
  std::vector<std::uint32_t> meet(m * m), join(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (ideals[a].is_subset_of(ideals[b])) leq[a].set(b);
      meet[a * m + b] = index.at(ideals[a] & ideals[b]);
      join[a * m + b] = index.at(ideals[a] | ideals[b]);
    }
  return {std::move(ideals), AbstractLattice::from_tables(std::move(leq), std::move(meet), std::move(join))};
}

std::vector<std::uint32_t> longest_chain_elements(const AbstractLattice& k) {
  auto up = heights_from_bottom(k);
  auto down = heights_to_top(k);
  const auto len = up[k.top()];
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < k.size(); ++x)
    if (up[x] + down[x] == len) out.push_back(x);
  return out;
}

SpineReport spine(const TrsLattice& t) {
  SpineReport rep;
  const std::size_t total = t.base.relation_count();
  for (std::uint32_t i = 0; i < t.systems.size(); ++i)
    if (t.systems[i].size() + left_complement(t.systems[i]).size() == total)
      rep.by_definition.push_back(i);
  rep.by_chains = longest_chain_elements(t.lattice);
  return rep;
}

bool is_sublattice(const AbstractLattice& k, const std::vector<std::uint32_t>& elems) {
  Bitset in(k.size());
  for (auto e : elems) in.set(e);
  for (auto a : elems)
    for (auto b : elems)
      if (!in.test(k.meet(a, b)) || !in.test(k.join(a, b))) return false;
  return true;
}

AbstractLattice sublattice(const AbstractLattice& k, const std::vector<std::uint32_t>& elems) {
  if (!is_sublattice(k, elems)) throw Error(ErrorCode::NotALattice, "elements are not closed under meet and join");
  const std::size_t m = elems.size();
  std::vector<std::int64_t> pos(k.size(), -1);
  for (std::size_t i = 0; i < m; ++i) pos[elems[i]] = static_cast<std::int64_t>(i);
  std::vector<Bitset> leq(m, Bitset(m));
  std::vector<std::uint32_t> meet(m * m), join(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (k.leq(elems[a], elems[b])) leq[a].set(b);
      meet[a * m + b] = static_cast<std::uint32_t>(pos[k.meet(elems[a], elems[b])]);
      join[a * m + b] = static_cast<std::uint32_t>(pos[k.join(elems[a], elems[b])]);
    }
  return AbstractLattice::from_tables(std::move(leq), std::move(meet), std::move(join));
}

GaloisGraph galois_graph(const FiniteLattice& lat) {
  const std::size_t n = lat.relation_count();
  GaloisGraph g{lat, {}};
  g.arcs.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    // p -> q exactly when q does not lift against p.
    Bitset row = lat.lifting(p).complement();
    row.reset(p);
    g.arcs.push_back(std::move(row));
  }
  return g;
}

MarkowskyLattice max_orthogonal_pairs(const std::vector<Bitset>& arcs, std::size_t cap) {
  const std::size_t n = arcs.size();
  const auto in_arcs = transpose(arcs);
  const Bitset all = Bitset::full(n);
  auto partner = [&](const Bitset& x) {
    Bitset blocked = x;
    x.for_each([&](std::size_t v) { blocked |= arcs[v]; });
    return all - blocked;
  };
  auto co_partner = [&](const Bitset& y) {
    Bitset blocked = y;
    y.for_each([&](std::size_t v) { blocked |= in_arcs[v]; });
    return all - blocked;
  };
  auto closure = [&](const Bitset& x) { return co_partner(partner(x)); };

  std::vector<Bitset> closed{closure(Bitset(n))};
  std::unordered_set<Bitset, BitsetHash> seen{closed.front()};
  for (std::size_t i = 0; i < closed.size(); ++i)
    for (std::size_t v = 0; v < n; ++v) {
      if (closed[i].test(v)) continue;
      Bitset grown = closed[i];
      grown.set(v);
      grown = closure(grown);
      if (seen.insert(grown).second) {
        if (seen.size() > cap)
          throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " orthogonal pairs");
        closed.push_back(std::move(grown));
      }
    }
  std::sort(closed.begin(), closed.end(),
            [](const Bitset& a, const Bitset& b) { return canonical_less(a, b); });

  std::unordered_map<Bitset, std::uint32_t, BitsetHash> index;
  for (std::size_t i = 0; i < closed.size(); ++i) index.emplace(closed[i], static_cast<std::uint32_t>(i));
  const std::size_t m = closed.size();
  std::vector<Bitset> leq(m, Bitset(m));
  std::vector<std::uint32_t> meet(m * m), join(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      if (closed[a].is_subset_of(closed[b])) leq[a].set(b);
      if (closed[b].is_subset_of(closed[a])) leq[b].set(a);
      // Closed sets are stable under intersection.
      meet[a * m + b] = meet[b * m + a] = index.at(closed[a] & closed[b]);
      join[a * m + b] = join[b * m + a] = index.at(closure(closed[a] | closed[b]));
    }

  MarkowskyLattice out;
  out.pairs.reserve(m);
  for (auto& x : closed) {
    Bitset y = partner(x);
    out.pairs.push_back({std::move(x), std::move(y)});
  }
  out.lattice = AbstractLattice::from_tables(std::move(leq), std::move(meet), std::move(join));
  return out;
}

bool markowsky_matches(const TrsLattice& t, const MarkowskyLattice& m) {
  const std::size_t n = t.systems.size();
  if (m.pairs.size() != n) return false;
  std::unordered_map<Bitset, std::uint32_t, BitsetHash> by_x;
  for (std::size_t i = 0; i < n; ++i) by_x.emplace(m.pairs[i].x, static_cast<std::uint32_t>(i));
  std::vector<std::uint32_t> image(n);
  Bitset used(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = by_x.find(t.systems[i].bits());
    if (it == by_x.end() || used.test(it->second)) return false;
    if (!(m.pairs[it->second].y == left_complement(t.systems[i]).bits())) return false;
    image[i] = it->second;
    used.set(it->second);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t.lattice.leq(a, b) != m.lattice.leq(image[a], image[b])) return false;
  return true;
}

std::optional<std::vector<std::uint32_t>> find_isomorphism(const AbstractLattice& a,
                                                           const AbstractLattice& b,
                                                           std::size_t cap) {
  const std::size_t n = a.size();
  if (n > cap || b.size() > cap)
    throw Error(ErrorCode::TooLarge, "isomorphism search is limited to " + std::to_string(cap) + " elements");
  if (b.size() != n) return std::nullopt;

  auto invariant = [](const AbstractLattice& k, std::size_t x) {
    return std::array<std::size_t, 4>{k.down_set(x).count(), k.up_set(x).count(),
                                      k.lower_covers(x).size(), k.upper_covers(x).size()};
  };
  std::vector<std::array<std::size_t, 4>> ia(n), ib(n);
  for (std::size_t x = 0; x < n; ++x) ia[x] = invariant(a, x), ib[x] = invariant(b, x);
  {
    auto sa = ia, sb = ib;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  std::vector<std::uint32_t> image(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t x) {
    if (x == n) return true;
    for (std::uint32_t y = 0; y < n; ++y) {
      if (used[y] || ia[x] != ib[y]) continue;
      bool ok = true;
      for (std::size_t w = 0; w < x && ok; ++w)
        ok = a.leq(w, x) == b.leq(image[w], y) && a.leq(x, w) == b.leq(y, image[w]);
      if (!ok) continue;
      used[y] = true;
      image[x] = y;
      if (assign(x + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return image;
}

bool lattice_isomorphic(const AbstractLattice& a, const AbstractLattice& b, std::size_t cap) {
  return find_isomorphism(a, b, cap).has_value();
}

bool lattice_isomorphic(const FiniteLattice& a, const FiniteLattice& b, std::size_t cap) {
  return lattice_isomorphic(AbstractLattice::from_lattice(a), AbstractLattice::from_lattice(b), cap);
}

FiniteLattice recover_lattice(const FiniteLattice& lat) {
  if (lat.relation_count() == 0) return chain(1);
  auto order = rel_order(lat, RelOrder::Sqsubset);
  auto below = transpose(order.leq);
  std::size_t gen = 0;
  for (std::size_t p = 1; p < below.size(); ++p)
    if (below[p].count() > below[gen].count()) gen = p;
  auto ideal = below[gen].indices();

  // Element 0 is the adjoined bottom, element i + 1 is ideal[i].
  const std::size_t m = ideal.size() + 1;
  std::vector<Bitset> leq(m, Bitset(m));
  leq[0] = Bitset::full(m);
  for (std::size_t i = 0; i < ideal.size(); ++i)
    for (std::size_t j = 0; j < ideal.size(); ++j)
      if (order.le(ideal[i], ideal[j])) leq[i + 1].set(j + 1);
  return FiniteLattice::from_order(leq);
}

}  // namespace wfs
