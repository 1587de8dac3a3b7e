#pragma once

#include "crn/network.hpp"

#include <vector>

namespace crn {

/// One class of an edge partition: the induced subnetwork with its matrices,
/// subspaces, and counts. Global ids index into the parent system.
struct Subnetwork {
  std::vector<Index> edge_ids;    // ascending
  std::vector<Index> vertex_ids;  // ascending
  Digraph graph;                  // local indices, vertex order = vertex_ids
  VectorXq rates;
  NetworkMatrices matrices;  // Y^j, Y_s^j, I_E^j, I_{E,s}^j, N^j, R_k^j, Gamma_k^j
  GraphStats stats;
  MatrixXq stoich_basis;   // S_j
  MatrixXq kinetic_basis;  // K_j
  MatrixXq diff_basis;     // L_j
  Index deficiency = 0;    // delta_j
  Index dependency = 0;    // d_j
  bool connected = false;

  std::vector<Index> global_sources() const;  // sources as parent vertex ids
};

struct CombinedMatrices {
  MatrixXq incidence;              // I*_E, V-disjoint-union x E (global edge order)
  MatrixXq source_incidence;       // I*_{E,s}
  MatrixXq laplacian;              // R*_k
  MatrixXq complex_matrix;         // Y*
  MatrixXq source_complex_matrix;  // Y*_s
  MatrixXq gamma;                  // Gamma_k = Y* R*_k, n x V_s-disjoint-union
  MatrixXq source_map;             // I*_{V,s} with Y*_s = Y_s I*_{V,s}
};

struct Decomposition {
  std::vector<std::vector<Index>> edge_partition;
  std::vector<Subnetwork> subnetworks;
  CombinedMatrices combined;
  bool connected_ok = false;
  bool independent_ok = false;

  Index class_count() const { return static_cast<Index>(subnetworks.size()); }
  std::vector<Index> class_sizes() const;  // |V_s^j| per class
};

/// Builds the decomposition induced by a user-supplied edge partition.
Decomposition decomposition_from_partition(const MassActionSystem& sys,
                                           const std::vector<std::vector<Index>>& partition);

/// Finest direct-product decomposition of ker N: classes are the connected
/// components of the co-occurrence graph of the RREF-canonical kernel basis
/// supports (zero-support edges become singleton classes). The direct-product
/// certificate sum_j dim ker N^j = dim ker N is verified on every call.
Decomposition finest_independent_decomposition(const MassActionSystem& sys);

struct DecompositionChecks {
  bool applicable = false;
  std::string reason;
  bool dependency_additive = false;       // d = sum d_j
  bool deficiency_additive = false;       // delta = sum delta_j
  bool vertex_count_identity = false;     // |V-disjoint-union| - |V| = ell - l
  bool incidence_kernel_identity = false; // ker I_E = ker I*_E
  bool diff_direct_sum = false;           // L = L_1 + ... + L_ell with dims adding
  bool kinetic_sum_contained = false;     // K <= sum K_j
  bool gamma_kernel_product = false;      // ker Gamma_k = product of ker Gamma_k^j

  bool all_ok() const {
    return applicable && dependency_additive && deficiency_additive && vertex_count_identity &&
           incidence_kernel_identity && diff_direct_sum && kinetic_sum_contained &&
           gamma_kernel_product;
  }
};

DecompositionChecks decomposition_checks(const MassActionSystem& sys, const Decomposition& dec);

/// Dependency of the decomposed system: |V_s-disjoint-union| - ell - dim(sum L_j).
Index system_dependency(const Decomposition& dec);

/// Basis of L = L_1 + ... + L_ell for the decomposed system.
MatrixXq system_diff_basis(const Decomposition& dec);

}  // namespace crn
