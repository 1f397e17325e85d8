#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magmalab/model.hpp"
#include "magmalab/term.hpp"

namespace magmalab {

enum class CellStrategy { RowMajor, MostConstrained };

struct SearchConfig {
  bool lnh = true;  // least-number heuristic; disable for exact counting
  CellStrategy strategy = CellStrategy::RowMajor;
  long long node_limit = 100'000'000;
  long long time_limit_ms = 0;  // 0 = unlimited
  int workers = 1;
};

SearchConfig default_config();  // honors MAGMALAB_LIMIT_NODES

enum class SearchStatus { Found, Exhausted, LimitExceeded };

struct SearchStats {
  long long nodes = 0;
  long long ms = 0;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Model> model;
  SearchStats stats;
};

// Backtracking search with ground-instance propagation: after each cell
// assignment every fully determined instance of every identity is evaluated
// and any violation prunes the branch.
SearchResult find_model(const Theory& t, int n, const SearchConfig& cfg);

// A model of all axioms that violates target, found by enumeration of models
// of the axioms with an eager check that prunes branches on which target is
// already forced to hold everywhere.
SearchResult find_witness(const Theory& axioms, const Identity& target, int n,
                          const SearchConfig& cfg);

enum class EnumStatus { Complete, CapReached, LimitExceeded };

struct EnumResult {
  EnumStatus status = EnumStatus::Complete;
  std::vector<Model> models;
  SearchStats stats;
};

// Deterministic order (row-major cells, ascending values). With the
// least-number heuristic enabled only one representative per renaming orbit
// is produced; disable it for the literally complete list.
EnumResult enumerate_models(const Theory& t, int n, size_t cap,
                            const SearchConfig& cfg);

struct AxiomVerdict {
  enum class Status { Witness, NoWitness, LimitExceeded };
  std::string name;
  Status status = Status::NoWitness;
  int size = 0;  // witness size when found
  std::optional<Model> witness;
  SearchStats stats;
};

struct IndependenceReport {
  int max_size = 0;
  std::vector<AxiomVerdict> axioms;

  bool all_witnessed() const;
};

// For each identity: search sizes 1..max_n for a model of the remaining
// identities that violates it; every witness is re-verified by the
// satisfaction checker before inclusion.
IndependenceReport independence_report(const Theory& t, int max_n,
                                       const SearchConfig& cfg);

}  // namespace magmalab
