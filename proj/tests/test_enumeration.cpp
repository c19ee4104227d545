#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wfs/enumeration.hpp"
#include "wfs/parallel.hpp"

using namespace wfs;

namespace {

std::vector<Bitset> random_graph(std::size_t n, double p, std::mt19937& rng) {
  std::vector<Bitset> adj(n, Bitset(n));
  std::bernoulli_distribution coin(p);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng)) adj[a].set(b), adj[b].set(a);
  return adj;
}

std::uint64_t brute_cliques(const std::vector<Bitset>& adj) {
  const std::size_t n = adj.size();
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b)
        if ((s >> a & 1U) && (s >> b & 1U) && !adj[a].test(b)) ok = false;
    count += ok;
  }
  return count;
}

std::size_t brute_max_clique(const std::vector<Bitset>& adj) {
  const std::size_t n = adj.size();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b)
        if ((s >> a & 1U) && (s >> b & 1U) && !adj[a].test(b)) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(s));
  }
  return best;
}

std::set<oracle::PairSet> as_pair_sets(const std::vector<TransferSystem>& systems) {
  std::set<oracle::PairSet> out;
  for (const auto& s : systems) {
    oracle::PairSet p;
    for (const Rel& r : s.relations()) p.insert({r.src, r.dst});
    out.insert(p);
  }
  return out;
}

}  // namespace

TEST_CASE("subset oracle") {
  auto one = enumerate_oracle(chain(1));
  REQUIRE(one.size() == 1);
  CHECK(one[0].empty());
  CHECK(enumerate_oracle(square()).size() == 10);
  CHECK(enumerate_oracle(chain(4)).size() == 14);
  for (const auto& lat : {square(), chain(4), diamond(3), product(chain(2), chain(3))}) {
    auto sets = enumerate_oracle(lat);
    auto brute = oracle::all_ts(lat);
    CHECK(sets.size() == brute.size());
    CHECK(as_pair_sets(sets) == std::set<oracle::PairSet>(brute.begin(), brute.end()));
  }
  CHECK_THROWS_AS(enumerate_oracle(boolean(4)), Error);
  try {
    enumerate_oracle(chain(8));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("bfs matches the oracle") {
  for (const auto& lat : {chain(1), chain(2), square(), chain(4), diamond(3), diamond(4),
                          product(chain(2), chain(3)), chain(5)}) {
    auto bfs = enumerate_bfs(lat);
    auto ora = enumerate_oracle(lat);
    CHECK(bfs == ora);
    for (std::size_t i = 1; i < bfs.size(); ++i) CHECK(canonical_less(bfs[i - 1], bfs[i]));
  }
  CHECK(enumerate_bfs(boolean(3)).size() == 450);
  CHECK(enumerate_bfs(diamond(3)).size() == 19);
  CHECK(enumerate_bfs(boolean(3), {.threads = 4}) == enumerate_bfs(boolean(3)));
  try {
    enumerate_bfs(boolean(3), {.cap = 100});
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("elevating graph") {
  auto g = elevating_graph(square());
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 4);
  // ids: 0=(0,1) 1=(0,2) 2=(0,3) 3=(1,3) 4=(2,3)
  CHECK(g.edge(0, 1));
  CHECK(g.edge(1, 4));
  CHECK(g.edge(4, 3));
  CHECK(g.edge(3, 0));
  CHECK(g.adjacency[2].none());

  auto b4 = elevating_graph(boolean(4));
  CHECK(b4.vertex_count() == 65);
  CHECK(b4.edge_count() == 1474);

  auto c2 = elevating_graph(chain(2));
  CHECK(c2.vertex_count() == 1);
  CHECK(c2.edge_count() == 0);

  for (const auto& lat : {square(), diamond(4), boolean(3)}) {
    auto eg = elevating_graph(lat);
    for (std::size_t p = 0; p < eg.vertex_count(); ++p) {
      CHECK_FALSE(eg.edge(p, p));
      for (std::size_t q = 0; q < eg.vertex_count(); ++q) {
        CHECK(eg.edge(p, q) == eg.edge(q, p));
        bool expect = p != q && lifts_left(lat, lat.relation(p), lat.relation(q)) &&
                      lifts_left(lat, lat.relation(q), lat.relation(p));
        CHECK(eg.edge(p, q) == expect);
        // Mutual membership in each other's kappa.
        CHECK(eg.edge(p, q) == (p != q && kappa(lat, lat.relation(p)).contains_id(q) &&
                                kappa(lat, lat.relation(q)).contains_id(p)));
      }
    }
  }
}

TEST_CASE("clique counting") {
  CHECK(count_cliques(elevating_graph(square())) == 10);
  CHECK(count_cliques(elevating_graph(boolean(3))) == 450);
  CHECK(count_cliques(std::vector<Bitset>{}) == 1);

  std::mt19937 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 16;
    auto adj = random_graph(n, 0.2 + 0.02 * trial, rng);
    auto expect = brute_cliques(adj);
    CHECK(count_cliques(adj) == expect);
    CHECK(count_cliques(adj, {.threads = 3}) == expect);
    std::uint64_t listed = 0;
    for_each_clique(adj, [&](const Bitset&) { ++listed; });
    CHECK(listed == expect);
  }
  // A complete graph on 70 vertices has 2^70 cliques.
  std::vector<Bitset> k70(70, Bitset::full(70));
  for (std::size_t v = 0; v < 70; ++v) k70[v].reset(v);
  CHECK(count_cliques(k70) == (BigInt(1) << 70));
}

TEST_CASE("clique counts equal transfer system counts") {
  for (const auto& lat : {chain(3), chain(4), chain(5), square(), diamond(3), diamond(4),
                          product(chain(2), chain(3))}) {
    CHECK(count_cliques(elevating_graph(lat)) == enumerate_oracle(lat).size());
  }
  for (unsigned n = 1; n <= 7; ++n)
    CHECK(count_cliques(elevating_graph(chain(n))) == oracle::catalan(n));
}

TEST_CASE("clique and transfer system bijection") {
  auto sq = square();
  CHECK(clique_to_ts(RelSet(sq)) == RelSet::diagonal(sq));
  CHECK(ts_to_clique(RelSet::diagonal(sq)).empty());
  CHECK(clique_to_ts(RelSet::of(sq, {{1, 3}, {2, 3}})) == RelSet::full(sq));
  try {
    clique_to_ts(RelSet::of(sq, {{0, 1}, {0, 3}}));
    FAIL("expected NotElevating");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotElevating);
  }

  auto b3 = boolean(3);
  auto systems = enumerate_bfs(b3);
  REQUIRE(systems.size() == 450);
  std::set<std::vector<std::size_t>> cliques;
  for (const auto& r : systems) {
    auto c = ts_to_clique(r);
    CHECK(is_elevating(c));
    CHECK(clique_to_ts(c) == r);
    cliques.insert(c.bits().indices());
  }
  CHECK(cliques.size() == 450);
  auto g = elevating_graph(b3);
  std::size_t listed = 0;
  for_each_clique(g.adjacency, [&](const Bitset& c) {
    auto r = clique_to_ts(RelSet(b3, c));
    CHECK(ts_to_clique(r).bits() == c);
    ++listed;
  });
  CHECK(listed == 450);
}

TEST_CASE("maximum clique") {
  CHECK(max_clique(elevating_graph(boolean(1))).size == 1);
  CHECK(max_clique(elevating_graph(boolean(2))).size == 2);
  CHECK(max_clique(elevating_graph(boolean(3))).size == 7);
  auto b4 = max_clique(elevating_graph(boolean(4)));
  CHECK(b4.size == 16);
  CHECK(b4.complete);
  CHECK(b4.clique.count() == 16);
  CHECK(is_elevating(RelSet(boolean(4), b4.clique)));

  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 18;
    auto adj = random_graph(n, 0.5, rng);
    auto res = max_clique(adj);
    CHECK(res.size == brute_max_clique(adj));
    CHECK(res.clique.count() == res.size);
    for (std::size_t a : res.clique.indices())
      for (std::size_t b : res.clique.indices())
        if (a != b) CHECK(adj[a].test(b));
  }
  CHECK(max_clique(std::vector<Bitset>{}).size == 0);
}

TEST_CASE("time budget") {
  auto g = elevating_graph(boolean(5));
  try {
    count_cliques(g, {.budget = std::chrono::milliseconds(50)});
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
  auto res = max_clique(g, std::chrono::milliseconds(1));
  CHECK(res.size <= 51);
  CHECK(res.clique.count() == res.size);
}

TEST_CASE("bounds") {
  CHECK(upper_bound(5, 0) == 1);
  CHECK(lower_bound(0) == 1);
  CHECK(lower_bound(7) == 128);
  // (1 + n/k)^k rounded down
  CHECK(upper_bound(5, 2) == 12);
  CHECK(upper_bound(19, 7) == 9752);
  CHECK(upper_bound(1, 1) == 2);
  for (std::size_t n = 1; n < 30; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      BigInt num = boost::multiprecision::pow(BigInt(n + k), static_cast<unsigned>(k));
      BigInt den = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k));
      CHECK(upper_bound(n, k) == num / den);
    }

  for (const auto& lat : {square(), chain(4), diamond(4), boolean(3)}) {
    auto rep = bounds(lat, true);
    REQUIRE(rep.count);
    CHECK(rep.lower_bound <= *rep.count);
    CHECK(*rep.count <= rep.upper_bound);
  }
  auto sq = bounds(square(), true, Method::Bfs);
  CHECK(*sq.count == 10);
  CHECK(sq.max_clique == 2);
  CHECK(sq.upper_bound == 12);
  CHECK_FALSE(bounds(square(), false).count);
}

TEST_CASE("parallel_for") {
  std::vector<int> out(1000, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * 2); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * 2));
  CHECK_THROWS_AS(parallel_for(100, 3,
                               [](std::size_t i) {
                                 if (i == 42) throw Error(ErrorCode::OutOfRange, "boom");
                               }),
                  Error);
  parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("method names") {
  CHECK(parse_method("bfs") == Method::Bfs);
  CHECK(parse_method("clique") == Method::Clique);
  CHECK(parse_method("oracle") == Method::Oracle);
  CHECK_FALSE(parse_method("dfs"));
  CHECK(std::string(to_string(Method::Bfs)) == "bfs");
}
