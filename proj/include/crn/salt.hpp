#pragma once

#include "crn/digraph.hpp"

#include <vector>

namespace crn {

/// Executable form of the second salt theorem on a one-component labeled
/// digraph: with q-hat the kernel vector of the rectangular Laplacian
/// supported on a terminal strong component T and beta = R_k 1, the prefix
/// sums of beta in q-hat order are nonnegative on T, strictly positive at
/// strict descents, and the total over T vanishes exactly when T = V.
/// All three claims are verified exactly on construction.
struct SaltCertificate {
  std::vector<Index> ordering;  // position -> vertex, q-hat descending, ties by index
  VectorXq q_hat;               // over V_s, support exactly T, max entry 1
  std::vector<Index> sources;   // V_s as vertex ids (q_hat index space)
  VectorXq beta;                // R_k 1_{V_s}, over V
  VectorXq partial_sums;        // prefix sums of beta in `ordering`, length t
  std::vector<Index> strict_positions;  // i < t with q-hat strictly descending
  Index terminal_size = 0;              // t
  bool covers_all_vertices = false;     // T = V
};

SaltCertificate salt_certificate(const Digraph& g, const VectorXq& rates,
                                 const std::vector<Index>& terminal);

}  // namespace crn
