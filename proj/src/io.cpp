#include "wfs/io.hpp"

#include <iomanip>
#include <sstream>

namespace wfs {

namespace {

std::string rel_label(Rel r) { return std::to_string(r.src) + "<" + std::to_string(r.dst); }

std::string system_label(const TransferSystem& r) {
  if (r.empty()) return "id";
  std::string out;
  for (const Rel& p : r.relations()) {
    if (!out.empty()) out += "\\n";
    out += rel_label(p);
  }
  return out;
}

void rel_nodes(std::ostream& os, const FiniteLattice& lat) {
  for (std::size_t p = 0; p < lat.relation_count(); ++p)
    os << "  r" << p << " [label=\"" << rel_label(lat.relation(p)) << "\"];\n";
}

}  // namespace

std::string elevating_dot(const ElevatingGraph& g) {
  std::ostringstream os;
  os << "graph elevating {\n";
  rel_nodes(os, g.lattice);
  for (std::size_t p = 0; p < g.vertex_count(); ++p)
    g.adjacency[p].for_each([&](std::size_t q) {
      if (p < q) os << "  r" << p << " -- r" << q << ";\n";
    });
  os << "}\n";
  return os.str();
}

std::string galois_dot(const GaloisGraph& g) {
  std::ostringstream os;
  os << "digraph galois {\n";
  rel_nodes(os, g.lattice);
  for (std::size_t p = 0; p < g.arcs.size(); ++p)
    g.arcs[p].for_each([&](std::size_t q) { os << "  r" << p << " -> r" << q << ";\n"; });
  os << "}\n";
  return os.str();
}

std::string hasse_dot(const TrsLattice& t) {
  std::ostringstream os;
  os << "digraph trs {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < t.systems.size(); ++i)
    os << "  t" << i << " [label=\"" << system_label(t.systems[i]) << "\"];\n";
  for (const auto& e : t.edges)
    os << "  t" << e.lower << " -> t" << e.upper << " [label=\"" << rel_label(e.label) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string systems_dot(const std::string& name, const std::vector<TransferSystem>& systems,
                        const AbstractLattice& k) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < systems.size(); ++i)
    os << "  t" << i << " [label=\"" << system_label(systems[i]) << "\"];\n";
  for (auto [lo, hi] : k.covers()) os << "  t" << lo << " -> t" << hi << ";\n";
  os << "}\n";
  return os.str();
}

std::string csv_header() { return "family,param,count,mcov,lower,upper,seconds"; }

std::string csv_row(const std::string& family, const std::string& param, const EnumerationReport& rep,
                    std::optional<double> seconds) {
  std::ostringstream os;
  os << family << ',' << param << ',';
  if (rep.count) os << *rep.count;
  // An unfinished max clique search only gives a lower bound on mcov, and no
  // upper bound on the count.
  os << ',' << (rep.max_clique_complete ? "" : ">=") << rep.max_clique << ',' << rep.lower_bound << ',';
  if (rep.max_clique_complete) os << rep.upper_bound;
  os << ',';
  if (seconds) os << std::fixed << std::setprecision(3) << *seconds;
  return os.str();
}

std::string triangle_csv_header() { return "n,k,formula,direct"; }

std::string triangle_csv_row(const TriangleEntry& e) {
  std::ostringstream os;
  os << e.n << ',' << e.k << ',' << e.formula << ',';
  if (e.direct) os << *e.direct;
  return os.str();
}

}  // namespace wfs
