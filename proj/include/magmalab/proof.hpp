#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magmalab/term.hpp"

namespace magmalab {

// One directed rewrite with a named identity. When `at` is absent the checker
// searches all positions and requires exactly one redex to produce `result`.
struct ProofStep {
  TermPtr result;
  std::string by;
  Direction dir = Direction::L2R;
  std::optional<Position> at;
};

struct ProofScript {
  Identity goal;
  TermPtr start;  // must equal goal.lhs
  std::vector<ProofStep> steps;
  std::vector<std::string> uses;
};

// Axioms plus previously verified goals, in verification order.
struct Registry {
  Theory entries;

  const Identity* find(const std::string& name) const {
    return entries.find(name);
  }
  void add(Identity id) { entries.add(std::move(id)); }
};

class ProofError : public std::runtime_error {
 public:
  ProofError(std::string reason, int step_index = -1)
      : std::runtime_error(step_index < 0
                               ? reason
                               : "step " + std::to_string(step_index) + ": " +
                                     reason),
        step(step_index) {}
  int step;  // -1 when the failure is not tied to a step
};

// Checks a single step against `current`; returns step.result on success.
// Matches the directed source side against the subterm of `current` and the
// target side against the corresponding subterm of the result, so variables
// occurring only in the target are reconstructed rather than supplied.
TermPtr check_step(const TermPtr& current, const ProofStep& step,
                   const Registry& reg);

// Verifies the whole chain; on success returns the goal, eligible for
// registry insertion.
Identity check_script(const ProofScript& s, const Registry& reg);

// Symmetric name pairing for mirror-generated proofs (Q1<->Q2, K5<->K10, ...).
using NamePairing = std::map<std::string, std::string>;
NamePairing standard_pairing();

// Mirrors goal, start, and every step; justification names go through the
// pairing, directions are preserved, positions are flipped along the path.
ProofScript mirror_script(const ProofScript& s, const NamePairing& pairing);

// Verifies scripts in order, inserting each goal after its script checks.
// Scripts may only use axioms and earlier goals.
Registry check_collection(const std::vector<ProofScript>& scripts,
                          const Theory& axioms);

std::string script_to_json(const ProofScript& s);
ProofScript script_from_json(const std::string& text);
std::string collection_to_json(const std::vector<ProofScript>& scripts);
// Accepts either a single script object or an array of scripts.
std::vector<ProofScript> collection_from_json(const std::string& text);

}  // namespace magmalab
