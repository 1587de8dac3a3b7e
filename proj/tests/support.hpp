#pragma once

#include "crn/network.hpp"

#include <initializer_list>
#include <vector>

namespace crn::testing {

inline MatrixXq matrix(std::initializer_list<std::initializer_list<int>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = static_cast<Index>(rows.begin()->size());
  MatrixXq out(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (int value : row) out(i, j++) = value;
    ++i;
  }
  return out;
}

inline VectorXq vector(std::initializer_list<Rational> values) {
  VectorXq out(static_cast<Index>(values.size()));
  Index i = 0;
  for (const auto& v : values) out[i++] = v;
  return out;
}

inline MassActionSystem make_system(Index species, MatrixXq complexes,
                                    std::vector<std::pair<Index, Index>> edges,
                                    std::vector<Rational> rates) {
  MassActionSystem sys;
  sys.network.species.resize(species);
  for (Index s = 0; s < species; ++s) sys.network.species[s] = "X" + std::to_string(s + 1);
  sys.network.complexes = std::move(complexes);
  sys.network.graph.vertex_count = sys.network.complexes.cols();
  sys.network.graph.edges = std::move(edges);
  sys.rates.resize(static_cast<Index>(rates.size()));
  for (size_t e = 0; e < rates.size(); ++e) sys.rates[static_cast<Index>(e)] = rates[e];
  return sys;
}

// deficiency-two path with one singleton terminal component; vertices in the
// source order y(1), y(2), y(3), y(4), y(5)
inline MassActionSystem example1(Rational k14 = 1, Rational k42 = 1, Rational k23 = 1,
                                 Rational k35 = 1) {
  return make_system(2,
                     matrix({{0, 2, 3, 1, 2},
                             {0, 1, 0, 1, 0}}),
                     {{0, 3}, {3, 1}, {1, 2}, {2, 4}}, {k14, k42, k23, k35});
}

// deficiency-two network with one singleton and one non-singleton terminal
// component (the introduction example)
inline MassActionSystem example2(Rational k15 = 1, Rational k12 = 1, Rational k21 = 1,
                                 Rational k23 = 1, Rational k34 = 1, Rational k43 = 1) {
  return make_system(2,
                     matrix({{1, 1, 0, 3, 0},
                             {0, 1, 1, 0, 0}}),
                     {{0, 4}, {0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 2}},
                     {k15, k12, k21, k23, k34, k43});
}

// deficiency-two network with two singleton terminal components
inline MassActionSystem example3(Rational k21 = 1, Rational k23 = 1, Rational k32 = 1,
                                 Rational k34 = 1, Rational k45 = 1) {
  return make_system(2,
                     matrix({{0, 1, 2, 3, 4},
                             {1, 0, 0, 1, 0}}),
                     {{1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 4}}, {k21, k23, k32, k34, k45});
}

inline MassActionSystem reversible_pair() {
  return make_system(2, matrix({{1, 0}, {0, 1}}), {{0, 1}, {1, 0}}, {1, 1});
}

inline MassActionSystem two_reversible_pairs() {
  return make_system(4,
                     matrix({{1, 0, 0, 0},
                             {0, 1, 0, 0},
                             {0, 0, 1, 0},
                             {0, 0, 0, 1}}),
                     {{0, 1}, {1, 0}, {2, 3}, {3, 2}}, {1, 1, 1, 1});
}

}  // namespace crn::testing
