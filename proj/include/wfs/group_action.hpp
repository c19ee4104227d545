#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wfs/enumeration.hpp"
#include "wfs/lattice.hpp"

namespace wfs {

/// A group acting on a lattice by order automorphisms, given by generators.
struct GroupAction {
  FiniteLattice lattice;
  std::vector<Permutation> generators;
};

/// Throws NotAutomorphism if some generator does not preserve the order.
GroupAction make_group_action(const FiniteLattice& lat, std::vector<Permutation> generators);

bool is_automorphism(const FiniteLattice& lat, const Permutation& g);
/// (g h)(x) = g(h(x)).
Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
/// Every element of the generated group, identity first.
std::vector<Permutation> group_elements(const GroupAction& action);

/// g·R, relating g(x) to g(y) whenever R relates x to y.
TransferSystem act_on_ts(const Permutation& g, const TransferSystem& r);
/// Fixed by every generator.
bool is_fixed(const GroupAction& action, const TransferSystem& r);
/// Transfer system closed under conjugation by the whole group, checked directly
/// on the relation without going through the generators.
bool is_g_transfer_system(const GroupAction& action, const RelSet& r);

/// Subgroup lattice with its conjugation action.
struct SubgroupLatticeSpec {
  std::string name;
  GroupAction action;
};

/// Sub(S3) as 1, three C2, C3, S3 (ids 0..5), permuted by conjugation.
SubgroupLatticeSpec s3_spec();
/// Sub(Q8): 1 < Z2 < three C4 < Q8. Every subgroup is normal.
SubgroupLatticeSpec q8_spec();
/// Sub(Cp x Cp) = diamond(p + 1) with the trivial action.
SubgroupLatticeSpec elementary_abelian_spec(std::size_t p);
SubgroupLatticeSpec spec_from_document(std::string name, const LatticeDocument& doc);

/// Transfer systems fixed by the action, in canonical order.
std::vector<TransferSystem> g_transfer_systems(const SubgroupLatticeSpec& spec, BfsOptions opts = {});

struct GLatticeReport {
  std::size_t total = 0;
  std::size_t fixed = 0;
  bool sublattice = false;
  bool semidistributive = false;
  bool trim = false;
  bool congruence_uniform = false;
  /// Fixedness under generators agrees with closure under the whole group.
  bool definition_agrees = false;

  bool all_hold() const {
    return sublattice && semidistributive && trim && congruence_uniform && definition_agrees;
  }
};

GLatticeReport check_g_lattice_properties(const SubgroupLatticeSpec& spec, BfsOptions opts = {});

}  // namespace wfs
