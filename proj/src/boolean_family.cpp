#include "wfs/boolean_family.hpp"

#include <bit>
#include <mutex>

namespace wfs {

namespace {

// Pascal rows grown on demand and shared between threads.
BigInt pascal(std::size_t a, std::size_t b) {
  static std::mutex mu;
  static std::vector<std::vector<BigInt>> rows{{1}};
  std::lock_guard lock(mu);
  while (rows.size() <= a) {
    const auto& prev = rows.back();
    std::vector<BigInt> row(prev.size() + 1);
    row.front() = row.back() = 1;
    for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
    rows.push_back(std::move(row));
  }
  return rows[a][b];
}

}  // namespace

BigInt binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  return pascal(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
}

RkSystem rk_system(std::size_t n, std::size_t k) {
  if (n == 0 || k > 2 * n - 1)
    throw Error(ErrorCode::OutOfRange, "threshold " + std::to_string(k) + " outside 0.." +
                                           std::to_string(n == 0 ? 0 : 2 * n - 1));
  auto lat = boolean(n);
  RelSet s(lat);
  for (std::size_t id = 0; id < lat.relation_count(); ++id) {
    const Rel r = lat.relation(id);
    if (static_cast<std::size_t>(std::popcount(r.src) + std::popcount(r.dst)) <= k) s.insert_id(id);
  }
  return {n, k, std::move(s)};
}

BigInt rk_lower_cover_count(std::size_t n, std::size_t k) {
  BigInt total = 0;
  const long nn = static_cast<long>(n), kk = static_cast<long>(k);
  for (long j = 0; j <= nn; ++j) {
    if (2 * j == kk) continue;
    total += binomial(nn, j) * binomial(nn - j, kk - 2 * j);
  }
  return total;
}

std::size_t rk_lower_cover_count_direct(std::size_t n, std::size_t k) {
  return lower_covers(rk_system(n, k).system).size();
}

BigInt mcov_lower_bound(std::size_t n) {
  const long nn = static_cast<long>(n);
  BigInt total = 0;
  if (n % 2 == 1) {
    for (long j = 0; j <= (nn - 1) / 2; ++j) total += binomial(nn, j) * binomial(nn - j, nn - 2 * j);
  } else {
    for (long j = 1; j <= nn / 2; ++j) total += binomial(nn, j) * binomial(nn - j, nn + 1 - 2 * j);
  }
  return total;
}

std::size_t mcov_threshold(std::size_t n) { return n % 2 == 1 ? n : n + 1; }

Bitset mcov_seed(std::size_t n) { return ts_to_clique(rk_system(n, mcov_threshold(n)).system).bits(); }

BigInt jirr_count(std::size_t n) {
  const auto e = static_cast<unsigned>(n);
  return boost::multiprecision::pow(BigInt(3), e) - boost::multiprecision::pow(BigInt(2), e);
}

BigInt edge_count(std::size_t n) {
  using boost::multiprecision::pow;
  const auto e = static_cast<unsigned>(n);
  BigInt v = jirr_count(n);
  BigInt pairs = v * (v - 1) / 2;
  return pairs - (pow(BigInt(6), e) - pow(BigInt(5), e) - pow(BigInt(3), e) + pow(BigInt(2), e));
}

BigInt diamond_count(std::size_t n) { return (BigInt(1) << (n + 1)) + n; }

std::vector<TriangleEntry> triangle_row(std::size_t n, bool with_direct) {
  std::vector<TriangleEntry> row;
  for (std::size_t k = 1; k + 1 <= 2 * n; ++k) {
    TriangleEntry e{n, k, rk_lower_cover_count(n, k), std::nullopt};
    if (with_direct) e.direct = rk_lower_cover_count_direct(n, k);
    row.push_back(std::move(e));
  }
  return row;
}

bool diamond_graph_has_expected_shape(std::size_t n) {
  auto lat = diamond(n);
  auto g = elevating_graph(lat);
  const Element top = static_cast<Element>(n + 1);
  for (std::size_t p = 0; p < g.vertex_count(); ++p)
    for (std::size_t q = 0; q < g.vertex_count(); ++q) {
      const Rel a = lat.relation(p), b = lat.relation(q);
      bool expect = false;
      if (p != q && !(a.src == 0 && a.dst == top) && !(b.src == 0 && b.dst == top)) {
        bool a_low = a.src == 0, b_low = b.src == 0;
        if (a_low == b_low) expect = true;
        else expect = (a_low ? a.dst : a.src) == (b_low ? b.dst : b.src);
      }
      if (g.edge(p, q) != expect) return false;
    }
  return true;
}

}  // namespace wfs
