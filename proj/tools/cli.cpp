#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>

#include "wfs/boolean_family.hpp"
#include "wfs/group_action.hpp"
#include "wfs/io.hpp"
#include "wfs/parallel.hpp"
#include "wfs/structure.hpp"

namespace wfs::cli {

namespace {

// Trs(L) is materialised with n^2 meet/join tables, and the structure checks
// are cubic in the worst case; these caps keep both within seconds.
constexpr std::size_t kTrsLatticeCap = 1000;
constexpr std::size_t kStructureCap = 500;
constexpr std::size_t kCongruenceCap = 60;
constexpr std::size_t kOracleRelations = 16;
constexpr std::size_t kBfsVerifyCap = 2'000'000;
constexpr std::chrono::milliseconds kVerifyCliqueBudget{10'000};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t chain = 0, boolean = 0, diamond = 0;
  std::string file;
  bool csv = false, dot = false, override_cap = false, timings = false;
  std::size_t threads = 0;
  double budget_seconds = 0;
  std::string method = "clique";

  bool elevating = false, galois = false, hasse = false;
  bool with_count = false;
  bool direct = false;
  std::size_t rows = 0;
  bool s3 = false, q8 = false;
  std::size_t cpcp = 0;

  std::size_t thread_count() const { return threads == 0 ? default_threads() : threads; }
  std::optional<std::chrono::milliseconds> budget() const {
    if (budget_seconds <= 0) return std::nullopt;
    return std::chrono::milliseconds(static_cast<long long>(budget_seconds * 1000));
  }
};

struct Family {
  std::string name;
  std::string param;
  FiniteLattice lattice;
  std::size_t n = 0;
  std::vector<Permutation> perms;
};

Family resolve(const Options& o, const CLI::App& sub) {
  std::vector<Family> found;
  LatticeOptions lopts{o.override_cap};
  if (sub.count("--chain")) found.push_back({"chain", std::to_string(o.chain), chain(o.chain), o.chain, {}});
  if (sub.count("--boolean"))
    found.push_back({"boolean", std::to_string(o.boolean), boolean(o.boolean, lopts), o.boolean, {}});
  if (sub.count("--diamond"))
    found.push_back({"diamond", std::to_string(o.diamond), diamond(o.diamond), o.diamond, {}});
  if (sub.count("--file")) {
    auto doc = read_lattice_file(o.file, lopts);
    found.push_back({"file", o.file, doc.lattice, 0, doc.perms});
  }
  if (found.size() != 1)
    throw UsageError("give exactly one of --chain, --boolean, --diamond or --file");
  return found.front();
}

std::optional<Bitset> seed_for(const Family& f) {
  if (f.name == "boolean" && f.n >= 1 && f.n <= 6) return mcov_seed(f.n);
  return std::nullopt;
}

Method method_of(const Options& o) {
  auto m = parse_method(o.method);
  if (!m) throw UsageError("unknown method '" + o.method + "' (use oracle, bfs or clique)");
  return *m;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

BigInt catalan(std::size_t n) {
  return binomial(static_cast<long>(2 * n), static_cast<long>(n)) / (n + 1);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// The CSV seconds column is only filled when timings were asked for, so that
// default output stays byte-identical between runs.
std::optional<double> csv_seconds(const Options& o, std::chrono::steady_clock::time_point start) {
  if (!o.timings) return std::nullopt;
  return seconds_since(start);
}

int cmd_count(const Options& o, const Family& f, std::ostream& out) {
  auto method = method_of(o);
  if (o.csv) {
    const auto start = std::chrono::steady_clock::now();
    auto rep = bounds(f.lattice, true, method, o.thread_count(), o.budget(), seed_for(f));
    out << csv_header() << '\n' << csv_row(f.name, f.param, rep, csv_seconds(o, start)) << '\n';
  } else {
    out << count_transfer_systems(f.lattice, method, o.thread_count(), o.budget()) << '\n';
  }
  return kOk;
}

int cmd_enumerate(const Options& o, const Family& f, std::ostream& out) {
  for (const auto& r : enumerate_bfs(f.lattice, {.threads = o.thread_count()})) out << format_rel_set(r) << '\n';
  return kOk;
}

int cmd_graph(const Options& o, const Family& f, std::ostream& out) {
  if (o.elevating + o.galois + o.hasse > 1) throw UsageError("choose one of --elevating, --galois, --hasse");
  if (o.hasse) {
    auto t = trs_lattice(f.lattice, {.cap = kTrsLatticeCap, .threads = o.thread_count()});
    if (o.dot) out << hasse_dot(t);
    else out << "systems: " << t.systems.size() << "\ncovers: " << t.edges.size() << '\n';
  } else if (o.galois) {
    auto g = galois_graph(f.lattice);
    std::size_t arcs = 0;
    for (const auto& row : g.arcs) arcs += row.count();
    if (o.dot) out << galois_dot(g);
    else out << "vertices: " << g.arcs.size() << "\narcs: " << arcs << '\n';
  } else {
    auto g = elevating_graph(f.lattice);
    if (o.dot) out << elevating_dot(g);
    else out << "vertices: " << g.vertex_count() << "\nedges: " << g.edge_count() << '\n';
  }
  return kOk;
}

int cmd_spine(const Options& o, const Family& f, std::ostream& out) {
  out << "ideals of (Rel*, preceq): " << ideal_count(rel_order(f.lattice, RelOrder::Preceq)) << '\n';
  auto t = trs_lattice(f.lattice, {.cap = kTrsLatticeCap, .threads = o.thread_count()});
  auto s = spine(t);
  out << "systems: " << t.systems.size() << '\n'
      << "spine by definition: " << s.by_definition.size() << '\n'
      << "spine by maximal chains: " << s.by_chains.size() << '\n'
      << "agree: " << yes_no(s.agree()) << '\n';
  return kOk;
}

int cmd_congruences(const Options& o, const Family& f, std::ostream& out) {
  auto t = trs_lattice(f.lattice, {.cap = kStructureCap, .threads = o.thread_count()});
  const auto& k = t.lattice;
  out << "systems: " << t.systems.size() << '\n'
      << "semidistributive: " << yes_no(is_semidistributive(k)) << '\n'
      << "extremal: " << yes_no(is_extremal(k)) << '\n'
      << "trim: " << yes_no(is_trim(k)) << '\n'
      << "congruence uniform: " << yes_no(is_congruence_uniform(k)) << '\n'
      << "distributive: " << yes_no(is_distributive(k)) << '\n';
  out << "ideals of (Rel*, containment)^op: "
      << ideal_count(rel_order(f.lattice, RelOrder::Containment).opposite()) << '\n';
  if (t.systems.size() <= kCongruenceCap) {
    out << "congruences: " << congruence_lattice(k).congruences.size() << '\n'
        << "regular: " << yes_no(is_regular(k)) << '\n';
  } else {
    out << "congruences: skipped (more than " << kCongruenceCap << " systems)\n";
  }
  return kOk;
}

int cmd_bounds(const Options& o, const Family& f, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  auto rep = bounds(f.lattice, o.with_count, method_of(o), o.thread_count(), o.budget(), seed_for(f));
  if (o.csv) {
    out << csv_header() << '\n' << csv_row(f.name, f.param, rep, csv_seconds(o, start)) << '\n';
    return kOk;
  }
  out << "relations: " << rep.relations << '\n';
  out << "mcov: " << (rep.max_clique_complete ? "" : ">=") << rep.max_clique << '\n';
  if (f.name == "boolean" && f.n >= 1) out << "mcov formula: " << mcov_lower_bound(f.n) << '\n';
  out << "lower: " << rep.lower_bound << '\n';
  if (rep.max_clique_complete) out << "upper: " << rep.upper_bound << '\n';
  else out << "upper: not certified (max clique search incomplete)\n";
  if (rep.count) out << "count: " << *rep.count << '\n';
  return kOk;
}

int cmd_triangle(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.rows < 1) throw UsageError("triangle needs at least one row");
  int status = kOk;
  if (o.csv) out << triangle_csv_header() << '\n';
  for (std::size_t n = 1; n <= o.rows; ++n) {
    auto row = triangle_row(n, o.direct);
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& e = row[i];
      if (e.direct && e.formula != *e.direct) {
        err << "mismatch at n=" << n << " k=" << e.k << ": formula " << e.formula << ", direct " << *e.direct
            << '\n';
        status = kMismatch;
      }
      if (o.csv) out << triangle_csv_row(e) << '\n';
      else out << (i ? " " : "") << e.formula;
    }
    if (!o.csv) out << '\n';
  }
  return status;
}

int cmd_group(const Options& o, const CLI::App& sub, std::ostream& out) {
  std::vector<SubgroupLatticeSpec> found;
  if (o.s3) found.push_back(s3_spec());
  if (o.q8) found.push_back(q8_spec());
  if (sub.count("--cpcp")) found.push_back(elementary_abelian_spec(o.cpcp));
  if (sub.count("--file")) {
    auto doc = read_lattice_file(o.file, {o.override_cap});
    found.push_back(spec_from_document(o.file, doc));
  }
  if (found.size() != 1) throw UsageError("give exactly one of --s3, --q8, --cpcp or --file");
  const auto& spec = found.front();
  BfsOptions bopts{.cap = kStructureCap, .threads = o.thread_count()};
  if (o.dot) {
    auto t = trs_lattice(spec.action.lattice, bopts);
    std::vector<std::uint32_t> ids;
    std::vector<TransferSystem> fixed;
    for (std::uint32_t i = 0; i < t.systems.size(); ++i)
      if (is_fixed(spec.action, t.systems[i])) ids.push_back(i), fixed.push_back(t.systems[i]);
    out << systems_dot("fixed", fixed, sublattice(t.lattice, ids));
    return kOk;
  }
  auto rep = check_g_lattice_properties(spec, bopts);
  out << "group: " << spec.name << '\n'
      << "transfer systems: " << rep.total << '\n'
      << "fixed: " << rep.fixed << '\n'
      << "sublattice: " << yes_no(rep.sublattice) << '\n'
      << "semidistributive: " << yes_no(rep.semidistributive) << '\n'
      << "trim: " << yes_no(rep.trim) << '\n'
      << "congruence uniform: " << yes_no(rep.congruence_uniform) << '\n'
      << "generators agree with conjugation closure: " << yes_no(rep.definition_agrees) << '\n';
  return rep.all_hold() ? kOk : kMismatch;
}

class Verifier {
 public:
  explicit Verifier(std::ostream& out) : out_(out) {}

  void check(const std::string& name, bool ok, const std::string& note = "") {
    ++total_;
    if (!ok) ++failed_;
    out_ << name << ": " << (ok ? "ok" : "MISMATCH");
    if (!note.empty()) out_ << " (" << note << ')';
    out_ << '\n';
  }

  void counts(std::vector<BigInt> values, const std::optional<BigInt>& expected, const std::string& what) {
    ++total_;
    bool ok = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
      out_ << (i ? " = " : "") << values[i];
      if (values[i] != values.front()) ok = false;
    }
    if (expected && !values.empty() && values.front() != *expected) ok = false;
    if (!what.empty()) out_ << " (" << what << ')';
    if (!ok) {
      out_ << " MISMATCH";
      if (expected) out_ << ", expected " << *expected;
      ++failed_;
    }
    out_ << '\n';
  }

  int finish() {
    if (failed_ == 0) out_ << "verify: all " << total_ << " checks passed\n";
    else out_ << "verify: " << failed_ << " of " << total_ << " checks failed\n";
    return failed_ == 0 ? kOk : kMismatch;
  }

 private:
  std::ostream& out_;
  std::size_t total_ = 0, failed_ = 0;
};

int cmd_verify(const Options& o, const Family& f, std::ostream& out) {
  const auto& lat = f.lattice;
  const std::size_t threads = o.thread_count();
  Verifier v(out);

  std::vector<BigInt> values;
  if (lat.relation_count() <= kOracleRelations) values.emplace_back(enumerate_oracle(lat).size());
  std::optional<std::vector<TransferSystem>> systems;
  try {
    systems = enumerate_bfs(lat, {.cap = kBfsVerifyCap, .threads = threads});
    values.emplace_back(systems->size());
  } catch (const Error& e) {
    if (!e.is_cap_violation()) throw;
  }
  values.push_back(count_cliques(elevating_graph(lat), {.threads = threads, .budget = o.budget()}));
  std::optional<BigInt> expected;
  std::string what;
  if (f.name == "chain") expected = catalan(f.n), what = "Catalan C" + f.param;
  if (f.name == "diamond") expected = diamond_count(f.n), what = "2^(n+1)+n";
  v.counts(values, expected, what);

  if (f.name == "boolean") {
    auto g = elevating_graph(lat);
    v.check("edge count formula", edge_count(f.n) == g.edge_count());
    v.check("relation count formula", jirr_count(f.n) == g.vertex_count());
    if (f.n >= 1 && f.n <= 5) {
      bool ok = true;
      for (const auto& e : triangle_row(f.n, true)) ok = ok && e.formula == *e.direct;
      v.check("triangle row", ok);
    }
    if (f.n >= 1 && f.n <= 6) {
      auto budget = o.budget().value_or(kVerifyCliqueBudget);
      auto mc = max_clique(g, budget, mcov_seed(f.n));
      auto formula = mcov_lower_bound(f.n);
      if (mc.complete) v.check("mcov equals formula", formula == mc.size);
      else v.check("mcov formula is a lower bound", formula <= mc.size, "search incomplete");
    }
  }
  if (f.name == "diamond") v.check("elevating graph shape", diamond_graph_has_expected_shape(f.n));

  if (systems && systems->size() <= kStructureCap) {
    auto t = trs_lattice(lat, {.threads = threads});
    const auto& k = t.lattice;
    v.check("semidistributive", is_semidistributive(k));
    v.check("extremal", is_extremal(k));
    v.check("trim", is_trim(k));
    v.check("congruence uniform", is_congruence_uniform(k));
    v.check("distributive iff at most two elements", is_distributive(k) == (lat.size() <= 2));
    v.check("spine by definition matches maximal chains", spine(t).agree());
    bool bijection = true;
    for (const auto& r : t.systems) {
      auto c = ts_to_clique(r);
      bijection = bijection && is_elevating(c) && clique_to_ts(c) == r;
    }
    v.check("clique bijection", bijection);
    v.check("maximal orthogonal pairs", markowsky_matches(t, max_orthogonal_pairs(galois_graph(lat))));
    if (t.systems.size() <= kCongruenceCap) {
      auto ideals = ideal_count(rel_order(lat, RelOrder::Containment).opposite());
      v.check("congruences count ideals", congruence_lattice(k).congruences.size() == ideals);
    }
  } else {
    out << "structure checks: skipped (more than " << kStructureCap << " systems)\n";
  }
  if (lat.size() <= 12) v.check("recovered from the relation order", lattice_isomorphic(recover_lattice(lat), lat));
  return v.finish();
}

void add_source(CLI::App* sub, Options& o) {
  sub->add_option("--chain", o.chain, "chain with n elements")->check(CLI::Range(1, 64));
  sub->add_option("--boolean", o.boolean, "boolean lattice of subsets of an n-set")->check(CLI::Range(0, 12));
  sub->add_option("--diamond", o.diamond, "diamond with n middle elements")->check(CLI::Range(1, 64));
  sub->add_option("--file", o.file, "lattice file")->check(CLI::ExistingFile);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_flag("--override-cap", o.override_cap, "allow lattices beyond the relation cap");
  sub->add_option("--threads", o.threads, "worker threads (default: all cores)");
  sub->add_option("--time-budget", o.budget_seconds, "seconds allowed for clique searches");
  sub->add_flag("--timings", o.timings, "report wall time on stderr");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Weak factorization systems and transfer systems on finite lattices", "wfs");
  app.require_subcommand(1);
  Options o;

  auto* count = app.add_subcommand("count", "number of transfer systems");
  auto* enumerate = app.add_subcommand("enumerate", "list every transfer system");
  auto* graph = app.add_subcommand("graph", "elevating graph, Galois graph or Hasse diagram");
  auto* spine_cmd = app.add_subcommand("spine", "spine of the lattice of transfer systems");
  auto* congruences = app.add_subcommand("congruences", "lattice properties and congruences");
  auto* bounds_cmd = app.add_subcommand("bounds", "max clique and counting bounds");
  auto* triangle = app.add_subcommand("triangle", "lower cover counts on boolean lattices");
  auto* group = app.add_subcommand("group", "transfer systems fixed by a group action");
  auto* verify = app.add_subcommand("verify", "cross-check all methods on one lattice");

  for (auto* sub : {count, enumerate, graph, spine_cmd, congruences, bounds_cmd, verify}) {
    add_source(sub, o);
    add_common(sub, o);
  }
  for (auto* sub : {count, bounds_cmd})
    sub->add_option("--method", o.method, "oracle, bfs or clique")->capture_default_str();
  for (auto* sub : {count, bounds_cmd, triangle}) sub->add_flag("--csv", o.csv, "CSV output");
  for (auto* sub : {graph, group}) sub->add_flag("--dot", o.dot, "DOT output");
  graph->add_flag("--elevating", o.elevating, "elevating graph (default)");
  graph->add_flag("--galois", o.galois, "Galois graph");
  graph->add_flag("--hasse", o.hasse, "Hasse diagram of Trs(L) with join labels");
  bounds_cmd->add_flag("--count", o.with_count, "also count transfer systems");
  triangle->add_option("rows", o.rows, "number of rows")->required()->check(CLI::Range(1, 200));
  triangle->add_flag("--direct", o.direct, "also count lower covers on the built systems");
  group->add_flag("--s3", o.s3, "subgroups of S3 under conjugation");
  group->add_flag("--q8", o.q8, "subgroups of Q8");
  group->add_option("--cpcp", o.cpcp, "subgroups of Cp x Cp");
  group->add_option("--file", o.file, "lattice file with perm lines")->check(CLI::ExistingFile);
  add_common(group, o);
  add_common(triangle, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    if (triangle->parsed()) {
      status = cmd_triangle(o, out, err);
    } else if (group->parsed()) {
      status = cmd_group(o, *group, out);
    } else {
      CLI::App* sub = app.get_subcommands().front();
      auto family = resolve(o, *sub);
      if (sub == count) status = cmd_count(o, family, out);
      else if (sub == enumerate) status = cmd_enumerate(o, family, out);
      else if (sub == graph) status = cmd_graph(o, family, out);
      else if (sub == spine_cmd) status = cmd_spine(o, family, out);
      else if (sub == congruences) status = cmd_congruences(o, family, out);
      else if (sub == bounds_cmd) status = cmd_bounds(o, family, out);
      else status = cmd_verify(o, family, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_cap_violation() ? kCapViolation : kUsage;
  }
  if (o.timings) err << "seconds: " << seconds_since(start) << '\n';
  return status;
}

}  // namespace wfs::cli
