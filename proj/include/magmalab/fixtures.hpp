#pragma once

#include <map>
#include <string>
#include <vector>

#include "magmalab/model.hpp"
#include "magmalab/proof.hpp"
#include "magmalab/term.hpp"

namespace magmalab {

struct ProofCollection {
  std::string axioms;  // name of the axiom theory fixture
  std::vector<ProofScript> scripts;
};

struct Fixtures {
  std::map<std::string, Model> models;
  std::map<std::string, Theory> theories;
  std::map<std::string, ProofCollection> proofs;
};

// Built-in catalogue: models TABLE1..TABLE4, CYCLIC3, LZ2, RZ2; theories
// QUASIGROUP, LOOP_EXTRA, RECT_AXIOMS, RECT_LOOP, KRAPEZ, KRAPEZ8, LEFT_ZERO,
// RIGHT_ZERO; proof collection SECTION3.
const Fixtures& fixtures();

Model left_zero_model(int n);
Model right_zero_model(int n);
Model cyclic_group_model(int n);  // with the induced division tables

}  // namespace magmalab
