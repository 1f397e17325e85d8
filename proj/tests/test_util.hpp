#pragma once

#include <random>
#include <vector>

#include "magmalab/model.hpp"
#include "magmalab/term.hpp"

namespace magmalab::testutil {

inline TermPtr random_term(std::mt19937& rng, int max_depth, int num_vars) {
  static const char* names[] = {"x", "y", "z", "u"};
  std::uniform_int_distribution<int> var_pick(0, num_vars - 1);
  if (max_depth == 0 || std::uniform_int_distribution<int>(0, 2)(rng) == 0)
    return make_var(names[var_pick(rng)]);
  Op op = static_cast<Op>(std::uniform_int_distribution<int>(0, 2)(rng));
  return make_app(op, random_term(rng, max_depth - 1, num_vars),
                  random_term(rng, max_depth - 1, num_vars));
}

inline Model random_model(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> val(0, n - 1);
  Model m = Model::filled(n);
  for (auto& table : m.tables)
    for (auto& cell : table) cell = val(rng);
  return m;
}

// Every total model on two elements: 4096 triples of 2x2 tables.
inline std::vector<Model> all_size2_models() {
  std::vector<Model> out;
  out.reserve(4096);
  for (int bits = 0; bits < 4096; ++bits) {
    Model m = Model::filled(2);
    for (int c = 0; c < 12; ++c)
      m.tables[c / 4][c % 4] = (bits >> c) & 1;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace magmalab::testutil
