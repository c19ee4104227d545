#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wfs/structure.hpp"

using namespace wfs;

namespace {

FiniteLattice n5() {
  std::vector<CoverPair> c{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  return FiniteLattice::from_covers(5, c);
}

FiniteLattice hexagon() {
  std::vector<CoverPair> c{{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}};
  return FiniteLattice::from_covers(6, c);
}

AbstractLattice abs(const FiniteLattice& lat) { return AbstractLattice::from_lattice(lat); }

std::size_t oracle_congruences(const AbstractLattice& k) {
  const std::size_t n = k.size();
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n)), join = meet;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) meet[a][b] = k.meet(a, b), join[a][b] = k.join(a, b);
  return oracle::count_congruences(meet, join);
}

std::vector<std::vector<bool>> matrix(const std::vector<Bitset>& rows) {
  std::vector<std::vector<bool>> m(rows.size(), std::vector<bool>(rows.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < rows.size(); ++b) m[a][b] = rows[a].test(b);
  return m;
}

}  // namespace

TEST_CASE("abstract lattice from an order") {
  auto k = abs(n5());
  auto same = AbstractLattice::from_order({k.up_set(0), k.up_set(1), k.up_set(2), k.up_set(3), k.up_set(4)});
  CHECK(same.tables_consistent());
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) {
      CHECK(same.meet(a, b) == k.meet(a, b));
      CHECK(same.join(a, b) == k.join(a, b));
    }
  CHECK(same.bottom() == 0);
  CHECK(same.top() == 4);
  CHECK(same.covers().size() == 5);

  // Two incomparable maximal elements.
  std::vector<Bitset> v(3, Bitset(3));
  v[0] = Bitset::full(3);
  v[1].set(1);
  v[2].set(2);
  try {
    AbstractLattice::from_order(v);
    FAIL("expected NotALattice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotALattice);
  }
}

TEST_CASE("lattice properties of small lattices") {
  auto m3 = abs(diamond(3));
  auto nf = abs(n5());
  CHECK(is_semidistributive(nf));
  CHECK_FALSE(is_distributive(nf));
  CHECK_FALSE(is_semidistributive(m3));
  CHECK_FALSE(is_join_semidistributive(m3));
  CHECK_FALSE(is_meet_semidistributive(m3));
  CHECK_FALSE(is_congruence_uniform(m3));
  CHECK(is_congruence_uniform(nf));
  CHECK(is_distributive(abs(boolean(3))));
  CHECK(is_congruence_uniform(abs(boolean(3))));

  auto hex = abs(hexagon());
  CHECK(length(hex) == 3);
  CHECK(join_irreducibles(hex).size() == 4);
  CHECK_FALSE(is_extremal(hex));
  CHECK_FALSE(is_trim(hex));
  CHECK(is_semidistributive(hex));

  CHECK(is_extremal(nf));
  CHECK(is_trim(abs(boolean(3))));
  CHECK(is_trim(abs(chain(5))));
  CHECK_FALSE(is_trim(m3));
  CHECK(length(abs(boolean(3))) == 3);
  CHECK(length(abs(chain(1))) == 0);

  CHECK(is_left_modular(nf, 0));
  CHECK(is_left_modular(nf, 4));
}

TEST_CASE("congruences against partition search") {
  for (const auto& lat : {chain(3), chain(4), square(), diamond(3), n5(), hexagon(), boolean(3)}) {
    auto k = abs(lat);
    auto cl = congruence_lattice(k);
    CHECK(cl.congruences.size() == oracle_congruences(k));
    CHECK(cl.lattice.tables_consistent());
    for (const auto& c : cl.congruences) CHECK(is_congruence(k, c));
    CHECK(cl.congruences.front().block_count == k.size());
    CHECK(cl.congruences.back().block_count == 1);
  }
  CHECK(congruence_lattice(abs(diamond(3))).congruences.size() == 2);
  CHECK(is_regular(abs(diamond(3))));
  CHECK_FALSE(is_regular(abs(chain(3))));

  auto c = con_of_pair(abs(chain(4)), 1, 2);
  CHECK(c.block_count == 3);
  CHECK(c.same_block(1, 2));
  CHECK_FALSE(c.same_block(0, 1));

  try {
    congruence_lattice(abs(boolean(6)));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("trs lattice of the square") {
  auto sq = square();
  auto t = trs_lattice(sq);
  REQUIRE(t.systems.size() == 10);
  CHECK(t.systems.front() == RelSet::diagonal(sq));
  CHECK(t.systems.back() == RelSet::full(sq));
  CHECK(t.lattice.tables_consistent());
  CHECK(t.lattice.bottom() == 0);
  CHECK(t.lattice.top() == 9);
  for (const auto& e : t.edges) {
    const auto& lo = t.systems[e.lower];
    const auto& hi = t.systems[e.upper];
    CHECK(hi.contains(e.label));
    CHECK_FALSE(lo.contains(e.label));
    CHECK(join_ts(lo, tr(sq, e.label)) == hi);
  }
  CHECK(is_semidistributive(t.lattice));
  CHECK(is_trim(t.lattice));
  CHECK(is_congruence_uniform(t.lattice));

  auto con = congruence_lattice(t.lattice);
  CHECK(con.congruences.size() == 17);
  CHECK(oracle_congruences(t.lattice) == 17);
  CHECK(ideal_count(rel_order(sq, RelOrder::Containment).opposite()) == 17);
}

TEST_CASE("edge congruences depend only on the label") {
  for (const auto& lat : {square(), diamond(3), chain(4), product(chain(2), chain(3))}) {
    auto t = trs_lattice(lat);
    std::map<Rel, CongruencePartition> by_label;
    for (const auto& e : t.edges) {
      auto c = con_of_pair(t.lattice, e.lower, e.upper);
      auto [it, fresh] = by_label.emplace(e.label, c);
      CHECK(it->second == c);
    }
    // Every non-trivial relation labels some edge.
    CHECK(by_label.size() == lat.relation_count());
    // Containment of the labels' congruences is the ⊆-order on Rel*(L).
    auto order = rel_order(lat, RelOrder::Containment);
    for (const auto& [p, cp] : by_label)
      for (const auto& [q, cq] : by_label) {
        auto ip = static_cast<std::size_t>(lat.rel_index(p.src, p.dst));
        auto iq = static_cast<std::size_t>(lat.rel_index(q.src, q.dst));
        CHECK(cp.refines(cq) == order.le(iq, ip));
      }
    if (t.systems.size() <= 60)
      CHECK(congruence_lattice(t.lattice).congruences.size() ==
            ideal_count(rel_order(lat, RelOrder::Containment)));
  }
}

TEST_CASE("trs lattices are semidistributive and trim") {
  for (const auto& lat : {chain(4), diamond(3), n5(), boolean(3)}) {
    auto t = trs_lattice(lat);
    CHECK(is_semidistributive(t.lattice));
    CHECK(is_congruence_uniform(t.lattice));
    CHECK(is_trim(t.lattice));
  }
}

TEST_CASE("spine") {
  auto sq = spine(trs_lattice(square()));
  CHECK(sq.agree());
  CHECK(sq.by_definition.size() == 8);
  auto c2 = spine(trs_lattice(chain(2)));
  CHECK(c2.agree());
  CHECK(c2.by_definition.size() == 2);
  auto b3 = spine(trs_lattice(boolean(3)));
  CHECK(b3.agree());
  CHECK(b3.by_definition.size() == 288);
  for (const auto& lat : {chain(4), diamond(3), n5()}) CHECK(spine(trs_lattice(lat)).agree());
}

TEST_CASE("ideal counts") {
  CHECK(ideal_count(rel_order(boolean(2), RelOrder::Preceq)) == 8);
  CHECK(ideal_count(rel_order(boolean(4), RelOrder::Preceq)) == 1975552);
  CHECK(ideal_count(Poset{}) == 1);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + trial % 14;
    std::vector<Bitset> leq(n, Bitset(n));
    std::bernoulli_distribution coin(0.3);
    for (std::size_t a = 0; a < n; ++a) {
      leq[a].set(a);
      for (std::size_t b = a + 1; b < n; ++b)
        if (coin(rng)) leq[a].set(b);
    }
    for (std::size_t k = 0; k < n; ++k)  // transitive closure
      for (std::size_t a = 0; a < n; ++a)
        if (leq[a].test(k)) leq[a] |= leq[k];
    Poset p{leq};
    auto expect = oracle::count_ideals(matrix(leq));
    CHECK(ideal_count(p) == expect);
    auto il = ideal_lattice(p);
    CHECK(il.ideals.size() == expect);
    CHECK(is_distributive(il.lattice));
  }
  for (const auto& lat : {square(), diamond(3), chain(4)})
    for (auto kind : {RelOrder::Sqsubset, RelOrder::Preceq, RelOrder::Containment}) {
      auto p = rel_order(lat, kind);
      CHECK(ideal_count(p) == oracle::count_ideals(matrix(p.leq)));
    }
}

TEST_CASE("galois graph and orthogonal pairs") {
  for (const auto& lat : {square(), diamond(3), boolean(3)}) {
    auto g = galois_graph(lat);
    auto e = elevating_graph(lat);
    for (std::size_t p = 0; p < g.arcs.size(); ++p) {
      CHECK_FALSE(g.arcs[p].test(p));
      for (std::size_t q = 0; q < g.arcs.size(); ++q) {
        const Rel rp = lat.relation(p), rq = lat.relation(q);
        bool arc = p != q && lat.leq(rq.src, rp.src) && lat.leq(rq.dst, rp.dst) && !lat.leq(rq.dst, rp.src);
        CHECK(g.arcs[p].test(q) == arc);
        if (p != q) CHECK(e.edge(p, q) == (!g.arcs[p].test(q) && !g.arcs[q].test(p)));
      }
    }
  }

  auto sq = max_orthogonal_pairs(galois_graph(square()));
  CHECK(sq.pairs.size() == 10);
  CHECK(oracle::orthogonal_pairs(matrix(galois_graph(square()).arcs)).size() == 10);
  CHECK(oracle::orthogonal_pairs(matrix(galois_graph(chain(3)).arcs)).size() == 5);

  for (const auto& lat : {square(), chain(4), diamond(3), n5(), boolean(3)}) {
    auto t = trs_lattice(lat);
    auto m = max_orthogonal_pairs(galois_graph(lat));
    CHECK(m.lattice.tables_consistent());
    CHECK(markowsky_matches(t, m));
  }

  // No arcs at all: every subset X pairs with its complement.
  std::vector<Bitset> empty(4, Bitset(4));
  CHECK(max_orthogonal_pairs(empty).pairs.size() == 16);
}

TEST_CASE("isomorphism and recovery") {
  CHECK(lattice_isomorphic(square(), boolean(2)));
  CHECK_FALSE(lattice_isomorphic(n5(), diamond(3)));
  CHECK_FALSE(lattice_isomorphic(hexagon(), boolean(2)));
  CHECK(lattice_isomorphic(opposite(n5()), n5()));
  try {
    lattice_isomorphic(boolean(4), boolean(4));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
  for (const auto& lat : {chain(1), chain(2), chain(4), square(), diamond(3), diamond(4), n5(), hexagon(),
                          boolean(3), product(chain(2), chain(3))})
    CHECK(lattice_isomorphic(recover_lattice(lat), lat));
}

TEST_CASE("sublattices") {
  auto k = abs(diamond(3));
  CHECK(is_sublattice(k, {0, 4}));
  CHECK(is_sublattice(k, {0, 1, 4}));
  CHECK_FALSE(is_sublattice(k, {1, 2}));
  auto sub = sublattice(k, {0, 1, 4});
  CHECK(sub.size() == 3);
  CHECK(length(sub) == 2);
  CHECK_THROWS_AS(sublattice(k, {1, 2, 4}), Error);
}
