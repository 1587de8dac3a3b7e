#pragma once

#include "crn/digraph.hpp"

#include <string>
#include <vector>

namespace crn {

/// A reaction network (G, y): a simple digraph with a complex per vertex.
struct ReactionNetwork {
  std::vector<std::string> species;
  Digraph graph;
  MatrixXq complexes;  // n x V, column v is the complex of vertex v

  Index species_count() const { return complexes.rows(); }
  Index vertex_count() const { return graph.vertex_count; }
};

/// Throws on structural violations; returns warnings (repeated complexes).
std::vector<std::string> validate(const ReactionNetwork& network);

struct MassActionSystem {
  ReactionNetwork network;
  VectorXq rates;  // per edge, > 0
};

void validate(const MassActionSystem& sys);

struct NetworkMatrices {
  MatrixXq complex_matrix;         // Y, n x V
  MatrixXq source_complex_matrix;  // Y_s, n x V_s
  MatrixXq incidence;              // I_E
  MatrixXq source_incidence;       // I_{E,s}
  MatrixXq stoichiometric;         // N = Y I_E
  MatrixXq laplacian;              // R_k = I_E diag(k) I_{E,s}^T
  MatrixXq gamma;                  // Y R_k, n x V_s
  std::vector<Index> sources;
};

NetworkMatrices build_matrices(const MassActionSystem& sys);

struct StructuralReport {
  NetworkMatrices matrices;
  GraphStats stats;
  MatrixXq stoich_basis;   // basis of S = im N
  MatrixXq kinetic_basis;  // basis of K = im(Y R_k)
  MatrixXq diff_basis;     // basis of L (differences of source complexes)
  Index deficiency = 0;    // delta = |V| - l - dim S
  Index dependency = 0;    // d = |V_s| - 1 - dim L (one class)
  bool kinetic_equals_stoich = false;
  bool diff_equals_stoich = false;
  bool kinetic_equals_diff = false;
};

/// Structural analysis of the undecomposed network (a single class).
StructuralReport structural_report(const MassActionSystem& sys);

/// Right-hand side Gamma_k x^{Y_s} of the mass-action ODE at a positive state.
Eigen::VectorXd evaluate_vector_field(const MassActionSystem& sys, const Eigen::VectorXd& x);

/// x^{Y_s}: the vector of source monomials at a positive state.
Eigen::VectorXd source_monomials(const MatrixXq& source_complex_matrix, const Eigen::VectorXd& x);

}  // namespace crn
