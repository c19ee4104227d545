#include "wfs/enumeration.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <unordered_set>

#include "wfs/parallel.hpp"

namespace wfs {

namespace {

using Clock = std::chrono::steady_clock;
using u128 = unsigned __int128;

// Fixed-width bitset for the clique kernels; W words live inline so the
// recursion does not allocate.
template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  std::size_t first() const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
    return Bitset::npos;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  Bits andnot(const Bits& o) const {
    Bits r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] & ~o.w[i];
    return r;
  }
  std::size_t and_count(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < W; ++i) c += static_cast<std::size_t>(std::popcount(w[i] & o.w[i]));
    return c;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < W; ++i) {
      auto x = w[i];
      while (x) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
};

template <std::size_t W>
Bits<W> to_bits(const Bitset& b) {
  Bits<W> r;
  for (std::size_t i = 0; i < b.word_count(); ++i) r.w[i] = b.data()[i];
  return r;
}

template <std::size_t W>
Bits<W> all_bits(std::size_t n) {
  Bits<W> r;
  for (std::size_t i = 0; i < n; ++i) r.set(i);
  return r;
}

// Runs f.template operator()<W>() with the smallest supported W >= words.
template <typename F>
decltype(auto) dispatch_width(std::size_t words, F&& f) {
  if (words <= 1) return f.template operator()<1>();
  if (words <= 2) return f.template operator()<2>();
  if (words <= 4) return f.template operator()<4>();
  if (words <= 8) return f.template operator()<8>();
  if (words <= 16) return f.template operator()<16>();
  if (words <= 32) return f.template operator()<32>();
  if (words <= 64) return f.template operator()<64>();
  throw Error(ErrorCode::TooLarge, "graph has too many vertices for the clique kernels");
}

u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::CapExceeded, "clique count overflows 128 bits");
  return r;
}

BigInt to_big(u128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

class Deadline {
 public:
  explicit Deadline(std::optional<std::chrono::milliseconds> budget) {
    if (budget) end_ = Clock::now() + *budget;
  }
  // Cheap to call often; only reads the clock every 4096 calls.
  bool expired(std::uint64_t& tick) const {
    if (!end_) return false;
    if ((++tick & 4095) != 0) return false;
    return Clock::now() > *end_;
  }

 private:
  std::optional<Clock::time_point> end_;
};

template <std::size_t W>
class CliqueCounter {
 public:
  CliqueCounter(const std::vector<Bitset>& adj, const Deadline& deadline,
                const std::atomic<bool>& stop)
      : deadline_(deadline), stop_(stop) {
    adj_.reserve(adj.size());
    for (const auto& row : adj) adj_.push_back(to_bits<W>(row));
  }

  struct Task {
    u128 mult;
    Bits<W> cand;
  };

  // Cliques inside `cand`, empty clique included. The pivot u splits them into
  // cliques within N[u] and, for each non-neighbour v_i, cliques whose first
  // non-neighbour is v_i.
  u128 count(const Bits<W>& cand) {
    if (stop_.load(std::memory_order_relaxed) || deadline_.expired(tick_))
      throw Error(ErrorCode::CapExceeded, "time budget exhausted while counting cliques");
    std::size_t size = cand.count();
    if (size <= 1) return 1 + size;
    std::size_t u = Bitset::npos, best = 0, worst = size;
    cand.for_each([&](std::size_t v) {
      std::size_t d = adj_[v].and_count(cand);
      if (u == Bitset::npos || d > best) u = v, best = d;
      worst = std::min(worst, d);
    });
    if (worst + 1 == size) {
      if (size >= 127) throw Error(ErrorCode::CapExceeded, "clique count overflows 128 bits");
      return u128{1} << size;
    }
    u128 total = count(cand & adj_[u]);
    total = checked_add(total, total);
    Bits<W> rest = cand.andnot(adj_[u]);
    rest.reset(u);
    Bits<W> remaining = cand;
    rest.for_each([&](std::size_t v) {
      total = checked_add(total, count(remaining & adj_[v]));
      remaining.reset(v);
    });
    return total;
  }

  // Splits a task one level, returning the children and adding any finished
  // leaf counts to `done`.
  std::vector<Task> split(const Task& t, u128& done) const {
    std::vector<Task> out;
    if (!t.cand.any()) {
      done = checked_add(done, t.mult);
      return out;
    }
    std::size_t u = t.cand.first(), best = 0;
    t.cand.for_each([&](std::size_t v) {
      std::size_t d = adj_[v].and_count(t.cand);
      if (d > best) best = d, u = v;
    });
    out.push_back({t.mult * 2, t.cand & adj_[u]});
    Bits<W> rest = t.cand.andnot(adj_[u]);
    rest.reset(u);
    Bits<W> remaining = t.cand;
    rest.for_each([&](std::size_t v) {
      out.push_back({t.mult, remaining & adj_[v]});
      remaining.reset(v);
    });
    return out;
  }

 private:
  std::vector<Bits<W>> adj_;
  const Deadline& deadline_;
  const std::atomic<bool>& stop_;
  std::uint64_t tick_ = 0;
};

template <std::size_t W>
BigInt count_cliques_w(const std::vector<Bitset>& adj, const CliqueOptions& opts) {
  Deadline deadline(opts.budget);
  std::atomic<bool> stop{false};
  CliqueCounter<W> root(adj, deadline, stop);
  const std::size_t threads = opts.threads == 0 ? default_threads() : opts.threads;

  using Task = typename CliqueCounter<W>::Task;
  std::vector<Task> tasks{{1, all_bits<W>(adj.size())}};
  u128 done = 0;
  if (threads > 1) {
    for (int depth = 0; depth < 3 && tasks.size() < 32 * threads; ++depth) {
      std::vector<Task> next;
      for (const auto& t : tasks) {
        auto kids = root.split(t, done);
        next.insert(next.end(), kids.begin(), kids.end());
      }
      tasks = std::move(next);
    }
  }

  std::vector<u128> partial(tasks.size(), 0);
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    try {
      CliqueCounter<W> worker(adj, deadline, stop);
      u128 c = worker.count(tasks[i].cand);
      u128 scaled;
      if (__builtin_mul_overflow(c, tasks[i].mult, &scaled))
        throw Error(ErrorCode::CapExceeded, "clique count overflows 128 bits");
      partial[i] = scaled;
    } catch (...) {
      stop.store(true);
      throw;
    }
  });
  u128 total = done;
  for (u128 p : partial) total = checked_add(total, p);
  return to_big(total);
}

template <std::size_t W>
class MaxCliqueSearch {
 public:
  MaxCliqueSearch(std::vector<Bits<W>> adj, const Deadline& deadline)
      : adj_(std::move(adj)), deadline_(deadline) {}

  void run(std::size_t n) { expand(all_bits<W>(n)); }
  void seed(std::vector<std::size_t> clique) { best_ = std::move(clique); }

  const std::vector<std::size_t>& best() const { return best_; }
  bool timed_out() const { return timed_out_; }

 private:
  void expand(Bits<W> cand) {
    if (deadline_.expired(tick_)) timed_out_ = true;
    if (timed_out_) return;

    // Greedy colouring gives an upper bound on the clique size in each suffix.
    std::vector<std::size_t> order, colour;
    Bits<W> uncoloured = cand;
    for (std::size_t k = 1; uncoloured.any(); ++k) {
      Bits<W> avail = uncoloured;
      while (avail.any()) {
        std::size_t v = avail.first();
        avail.reset(v);
        avail = avail.andnot(adj_[v]);
        uncoloured.reset(v);
        order.push_back(v);
        colour.push_back(k);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + colour[i] <= best_.size()) return;
      std::size_t v = order[i];
      current_.push_back(v);
      Bits<W> next = cand & adj_[v];
      if (!next.any()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(next);
      }
      current_.pop_back();
      cand.reset(v);
      if (timed_out_) return;
    }
  }

  std::vector<Bits<W>> adj_;
  const Deadline& deadline_;
  std::vector<std::size_t> current_, best_;
  std::uint64_t tick_ = 0;
  bool timed_out_ = false;
};

}  // namespace

std::size_t ElevatingGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency) twice += row.count();
  return twice / 2;
}

ElevatingGraph elevating_graph(const FiniteLattice& lat) {
  const std::size_t n = lat.relation_count();
  ElevatingGraph g{lat, {}};
  g.adjacency.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    // q is adjacent to p when p lifts against q and q lifts against p.
    Bitset row = lat.lifted_by(p) & lat.lifting(p);
    row.reset(p);
    g.adjacency.push_back(std::move(row));
  }
  return g;
}

void sort_canonical(std::vector<TransferSystem>& systems) {
  std::sort(systems.begin(), systems.end(),
            [](const RelSet& a, const RelSet& b) { return canonical_less(a, b); });
}

std::vector<TransferSystem> enumerate_oracle(const FiniteLattice& lat) {
  const std::size_t n = lat.relation_count();
  if (n > 25)
    throw Error(ErrorCode::TooLarge,
                "subset oracle is limited to 25 relations, lattice has " + std::to_string(n));
  std::vector<TransferSystem> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bitset b(n);
    if (n) b.data()[0] = mask;
    RelSet s(lat, std::move(b));
    if (is_transfer_system(s)) out.push_back(std::move(s));
  }
  sort_canonical(out);
  return out;
}

std::vector<TransferSystem> enumerate_bfs(const FiniteLattice& lat, BfsOptions opts) {
  const std::size_t n = lat.relation_count();
  std::vector<Bitset> principal;
  principal.reserve(n);
  for (std::size_t p = 0; p < n; ++p) principal.push_back(tr(lat, lat.relation(p)).bits());

  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<Bitset> all{Bitset(n)};
  seen.insert(all.front());
  std::vector<Bitset> frontier = all;

  while (!frontier.empty()) {
    std::vector<std::vector<Bitset>> found(frontier.size());
    parallel_for(frontier.size(), opts.threads, [&](std::size_t i) {
      const RelSet r(lat, frontier[i]);
      const Bitset lifting = left_complement(r).bits();
      for (std::size_t p = 0; p < n; ++p) {
        if (r.contains_id(p)) continue;
        RelSet j = transitive_closure(RelSet(lat, r.bits() | principal[p]));
        // r ⊂ j is a cover exactly when one relation of j lifts against r.
        if ((j.bits() & lifting).count() == 1) found[i].push_back(std::move(j.bits()));
      }
    });
    std::vector<Bitset> next;
    for (auto& list : found)
      for (auto& b : list)
        if (seen.insert(b).second) {
          if (seen.size() > opts.cap)
            throw Error(ErrorCode::CapExceeded,
                        "more than " + std::to_string(opts.cap) + " transfer systems");
          next.push_back(std::move(b));
        }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  std::vector<TransferSystem> out;
  out.reserve(all.size());
  for (auto& b : all) out.emplace_back(lat, std::move(b));
  sort_canonical(out);
  return out;
}

BigInt count_cliques(const std::vector<Bitset>& adjacency, CliqueOptions opts) {
  if (adjacency.empty()) return 1;
  return dispatch_width(adjacency.front().word_count(),
                        [&]<std::size_t W>() { return count_cliques_w<W>(adjacency, opts); });
}

void for_each_clique(const std::vector<Bitset>& adjacency,
                     const std::function<void(const Bitset&)>& f) {
  const std::size_t n = adjacency.size();
  Bitset clique(n);
  std::function<void(Bitset)> rec = [&](Bitset cand) {
    f(clique);
    for (std::size_t v = cand.first(); v != Bitset::npos; v = cand.next(v + 1)) {
      cand.reset(v);
      clique.set(v);
      rec(cand & adjacency[v]);
      clique.reset(v);
    }
  };
  rec(Bitset::full(n));
}

MaxCliqueResult max_clique(const std::vector<Bitset>& adjacency,
                           std::optional<std::chrono::milliseconds> budget,
                           const std::optional<Bitset>& seed) {
  const std::size_t n = adjacency.size();
  MaxCliqueResult result{0, Bitset(n), true};
  if (n == 0) return result;
  if (seed) {
    bool ok = seed->size() == n;
    if (ok)
      seed->for_each([&](std::size_t v) {
        Bitset others = *seed;
        others.reset(v);
        if (!others.is_subset_of(adjacency[v])) ok = false;
      });
    if (!ok) throw Error(ErrorCode::OutOfRange, "seed is not a clique of the graph");
  }

  // Renumber by decreasing degree so the colouring sees hubs first.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return adjacency[a].count() > adjacency[b].count();
  });
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

  Deadline deadline(budget);
  dispatch_width(adjacency.front().word_count(), [&]<std::size_t W>() {
    std::vector<Bits<W>> adj(n);
    for (std::size_t v = 0; v < n; ++v)
      adjacency[v].for_each([&](std::size_t w) { adj[pos[v]].set(pos[w]); });
    MaxCliqueSearch<W> search(std::move(adj), deadline);
    if (seed) {
      std::vector<std::size_t> start;
      seed->for_each([&](std::size_t v) { start.push_back(pos[v]); });
      search.seed(std::move(start));
    }
    search.run(n);
    for (std::size_t v : search.best()) result.clique.set(order[v]);
    result.size = search.best().size();
    result.complete = !search.timed_out();
    return 0;
  });
  return result;
}

bool is_elevating(const RelSet& s) {
  const auto& lat = s.lattice();
  bool ok = true;
  s.bits().for_each([&](std::size_t p) {
    Bitset others = s.bits();
    others.reset(p);
    if (!others.is_subset_of(lat.lifted_by(p)) || !others.is_subset_of(lat.lifting(p)))
      ok = false;
  });
  return ok;
}

TransferSystem clique_to_ts(const RelSet& s) {
  if (!is_elevating(s))
    throw Error(ErrorCode::NotElevating, "relations do not pairwise lift each other");
  return tr(s);
}

RelSet ts_to_clique(const TransferSystem& r) {
  RelSet out(r.lattice());
  for (const auto& lc : lower_covers(r)) out.insert(lc.label);
  return out;
}

BigInt upper_bound(std::size_t n, std::size_t k) {
  using boost::multiprecision::cpp_rational;
  if (k == 0) return 1;
  cpp_rational ratio{BigInt(n), BigInt(k)};
  cpp_rational sum = 0, power = 1;
  BigInt binom = 1;
  for (std::size_t j = 0; j <= k; ++j) {
    sum += cpp_rational(binom) * power;
    power *= ratio;
    binom = binom * (k - j) / (j + 1);
  }
  return boost::multiprecision::numerator(sum) / boost::multiprecision::denominator(sum);
}

BigInt lower_bound(std::size_t k) { return BigInt(1) << k; }

const char* to_string(Method m) {
  switch (m) {
    case Method::Oracle: return "oracle";
    case Method::Bfs: return "bfs";
    case Method::Clique: return "clique";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& s) {
  if (s == "oracle") return Method::Oracle;
  if (s == "bfs") return Method::Bfs;
  if (s == "clique") return Method::Clique;
  return std::nullopt;
}

BigInt count_transfer_systems(const FiniteLattice& lat, Method method, std::size_t threads,
                              std::optional<std::chrono::milliseconds> budget) {
  switch (method) {
    case Method::Oracle: return enumerate_oracle(lat).size();
    case Method::Bfs: return enumerate_bfs(lat, {.threads = threads}).size();
    case Method::Clique:
      return count_cliques(elevating_graph(lat), {.threads = threads, .budget = budget});
  }
  return 0;
}

EnumerationReport bounds(const FiniteLattice& lat, bool with_count, Method method,
                         std::size_t threads, std::optional<std::chrono::milliseconds> budget,
                         const std::optional<Bitset>& seed) {
  EnumerationReport rep;
  rep.method = method;
  rep.relations = lat.relation_count();
  auto mc = max_clique(elevating_graph(lat), budget, seed);
  rep.max_clique = mc.size;
  rep.max_clique_complete = mc.complete;
  rep.lower_bound = lower_bound(mc.size);
  rep.upper_bound = upper_bound(rep.relations, mc.size);
  if (with_count) rep.count = count_transfer_systems(lat, method, threads, budget);
  return rep;
}

}  // namespace wfs
