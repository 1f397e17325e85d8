#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magmalab/term.hpp"

namespace magmalab {

inline constexpr int kMaxModelSize = 64;

// A finite algebra on {0..size-1} given by three Cayley tables. Totality is
// the only structural requirement; models need not be quasigroups.
struct Model {
  int size = 0;
  std::array<std::vector<int>, 3> tables;  // indexed by Op; row-major

  int at(Op op, int i, int j) const {
    return tables[static_cast<int>(op)][i * size + j];
  }
  int& at(Op op, int i, int j) {
    return tables[static_cast<int>(op)][i * size + j];
  }

  static Model filled(int size, int value = 0);
};

bool operator==(const Model& a, const Model& b);

// Variable values in first-occurrence order of the term(s) being evaluated.
using Assignment = std::vector<std::pair<std::string, int>>;

struct Verdict {
  std::string name;
  bool holds = false;
  std::optional<Assignment> witness;  // present iff !holds
};

int eval_term(const TermPtr& t, const Model& m, const Assignment& a);

// Exhaustive check over all assignments; reports the lexicographically first
// violation (variables in first-occurrence order, values ascending).
Verdict satisfies(const Model& m, const Identity& id);
std::vector<Verdict> satisfies_theory(const Model& m, const Theory& t);
bool all_hold(const std::vector<Verdict>& vs);

// Coordinatewise product; element (i,j) is encoded as i*b.size + j.
// Throws std::invalid_argument beyond kMaxModelSize.
Model direct_product(const Model& a, const Model& b);

// Transposes mul and swaps the transposed division tables.
Model dual_model(const Model& m);

bool is_quasigroup(const Model& m);
bool is_loop(const Model& m);
bool is_rectangular_band(const Model& m);

std::string model_to_json(const Model& m);
Model model_from_json(const std::string& text);  // throws ParseError

}  // namespace magmalab
