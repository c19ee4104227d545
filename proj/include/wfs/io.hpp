#pragma once

#include <optional>
#include <string>

#include "wfs/boolean_family.hpp"
#include "wfs/enumeration.hpp"
#include "wfs/structure.hpp"

namespace wfs {

/// Undirected graph, one node per relation labelled `a<b`, in relation id order.
std::string elevating_dot(const ElevatingGraph& g);
std::string galois_dot(const GaloisGraph& g);
/// Hasse diagram of Trs(L); nodes list their relations, edges carry join labels.
std::string hasse_dot(const TrsLattice& t);

/// Hasse diagram of an arbitrary family of systems ordered by k, unlabelled edges.
std::string systems_dot(const std::string& name, const std::vector<TransferSystem>& systems,
                        const AbstractLattice& k);

/// `family,param,count,mcov,lower,upper,seconds`
std::string csv_header();
/// The seconds column stays empty unless a value is given.
std::string csv_row(const std::string& family, const std::string& param, const EnumerationReport& rep,
                    std::optional<double> seconds = std::nullopt);

/// `n,k,formula,direct`
std::string triangle_csv_header();
std::string triangle_csv_row(const TriangleEntry& e);

}  // namespace wfs
