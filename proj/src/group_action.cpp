#include "wfs/group_action.hpp"

#include <numeric>
#include <set>

#include "wfs/parallel.hpp"
#include "wfs/structure.hpp"

namespace wfs {

namespace {

Permutation identity(std::size_t m) {
  Permutation p(m);
  std::iota(p.begin(), p.end(), Element{0});
  return p;
}

void require_automorphism(const FiniteLattice& lat, const Permutation& g) {
  if (!is_automorphism(lat, g))
    throw Error(ErrorCode::NotAutomorphism, "permutation does not preserve the order");
}

}  // namespace

bool is_automorphism(const FiniteLattice& lat, const Permutation& g) {
  if (g.size() != lat.size()) return false;
  std::vector<bool> seen(g.size(), false);
  for (auto x : g) {
    if (x >= g.size() || seen[x]) return false;
    seen[x] = true;
  }
  return is_isomorphism(lat, lat, g);
}

GroupAction make_group_action(const FiniteLattice& lat, std::vector<Permutation> generators) {
  for (const auto& g : generators) require_automorphism(lat, g);
  return {lat, std::move(generators)};
}

Permutation compose(const Permutation& g, const Permutation& h) {
  Permutation out(h.size());
  for (std::size_t x = 0; x < h.size(); ++x) out[x] = g[h[x]];
  return out;
}

Permutation inverse(const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[g[x]] = static_cast<Element>(x);
  return out;
}

std::vector<Permutation> group_elements(const GroupAction& action) {
  std::vector<Permutation> all{identity(action.lattice.size())};
  std::set<Permutation> seen(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& g : action.generators) {
      auto next = compose(g, all[i]);
      if (seen.insert(next).second) all.push_back(std::move(next));
    }
  return all;
}

TransferSystem act_on_ts(const Permutation& g, const TransferSystem& r) {
  const auto& lat = r.lattice();
  require_automorphism(lat, g);
  RelSet out(lat);
  for (const Rel& p : r.relations()) out.insert({g[p.src], g[p.dst]});
  return out;
}

bool is_fixed(const GroupAction& action, const TransferSystem& r) {
  for (const auto& g : action.generators)
    if (!(act_on_ts(g, r) == r)) return false;
  return true;
}

bool is_g_transfer_system(const GroupAction& action, const RelSet& r) {
  if (!is_transfer_system(r)) return false;
  for (const auto& g : group_elements(action))
    for (const Rel& p : r.relations())
      if (!r.contains(g[p.src], g[p.dst])) return false;
  return true;
}

SubgroupLatticeSpec s3_spec() {
  // 1..3 are the order-two subgroups, 4 is C3. Conjugation acts on the three
  // involutions as the full symmetric group.
  auto lat = diamond(4);
  return {"S3", make_group_action(lat, {{0, 2, 3, 1, 4, 5}, {0, 2, 1, 3, 4, 5}})};
}

SubgroupLatticeSpec q8_spec() {
  std::vector<CoverPair> covers{{0, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 5}, {4, 5}};
  auto lat = FiniteLattice::from_covers(6, covers);
  return {"Q8", make_group_action(lat, {identity(6)})};
}

SubgroupLatticeSpec elementary_abelian_spec(std::size_t p) {
  if (p < 2) throw Error(ErrorCode::OutOfRange, "p must be at least 2");
  auto lat = diamond(p + 1);
  return {"C" + std::to_string(p) + "xC" + std::to_string(p), make_group_action(lat, {identity(lat.size())})};
}

SubgroupLatticeSpec spec_from_document(std::string name, const LatticeDocument& doc) {
  return {std::move(name), make_group_action(doc.lattice, doc.perms)};
}

std::vector<TransferSystem> g_transfer_systems(const SubgroupLatticeSpec& spec, BfsOptions opts) {
  auto all = enumerate_bfs(spec.action.lattice, opts);
  std::vector<char> keep(all.size(), 0);
  parallel_for(all.size(), opts.threads, [&](std::size_t i) { keep[i] = is_fixed(spec.action, all[i]); });
  std::vector<TransferSystem> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (keep[i]) out.push_back(std::move(all[i]));
  return out;
}

GLatticeReport check_g_lattice_properties(const SubgroupLatticeSpec& spec, BfsOptions opts) {
  GLatticeReport rep;
  auto t = trs_lattice(spec.action.lattice, opts);
  rep.total = t.systems.size();
  std::vector<std::uint32_t> fixed;
  rep.definition_agrees = true;
  for (std::uint32_t i = 0; i < t.systems.size(); ++i) {
    bool f = is_fixed(spec.action, t.systems[i]);
    if (f) fixed.push_back(i);
    if (f != is_g_transfer_system(spec.action, t.systems[i])) rep.definition_agrees = false;
  }
  rep.fixed = fixed.size();
  rep.sublattice = is_sublattice(t.lattice, fixed);
  if (!rep.sublattice) return rep;
  auto sub = sublattice(t.lattice, fixed);
  rep.semidistributive = is_semidistributive(sub);
  rep.trim = is_trim(sub);
  rep.congruence_uniform = is_congruence_uniform(sub);
  return rep;
}

}  // namespace wfs
