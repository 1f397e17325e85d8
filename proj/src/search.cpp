#include "magmalab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace magmalab {

SearchConfig default_config() {
  SearchConfig cfg;
  if (const char* env = std::getenv("MAGMALAB_LIMIT_NODES")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) cfg.node_limit = v;
  }
  return cfg;
}

bool IndependenceReport::all_witnessed() const {
  for (const auto& a : axioms)
    if (a.status != AxiomVerdict::Status::Witness) return false;
  return true;
}

namespace {

// Terms compiled to postfix programs over variable slots.
struct CompiledSide {
  struct Node {
    bool is_var;
    int8_t op;
    int8_t var;
  };
  std::vector<Node> post;
};

void compile_side(const TermPtr& t, const std::vector<std::string>& vars,
                  CompiledSide& out) {
  if (t->is_var()) {
    auto it = std::find(vars.begin(), vars.end(), t->var);
    out.post.push_back({true, 0, static_cast<int8_t>(it - vars.begin())});
    return;
  }
  compile_side(t->left, vars, out);
  compile_side(t->right, vars, out);
  out.post.push_back({false, static_cast<int8_t>(t->op), 0});
}

struct CompiledIdentity {
  int var_count;
  CompiledSide lhs, rhs;
};

CompiledIdentity compile_identity(const Identity& id) {
  std::vector<std::string> vars = variables_of(id.lhs);
  for (const auto& v : variables_of(id.rhs))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  CompiledIdentity ci;
  ci.var_count = static_cast<int>(vars.size());
  compile_side(id.lhs, vars, ci.lhs);
  compile_side(id.rhs, vars, ci.rhs);
  return ci;
}

// One ground instance: an identity with concrete values for its variables.
struct Instance {
  const CompiledIdentity* id;
  std::array<int8_t, 8> assign;
};

std::vector<Instance> ground_instances(
    const std::vector<CompiledIdentity>& ids, int n) {
  std::vector<Instance> out;
  for (const auto& ci : ids) {
    int k = ci.var_count;
    Instance inst;
    inst.id = &ci;
    inst.assign.fill(0);
    while (true) {
      out.push_back(inst);
      int i = k - 1;
      for (; i >= 0; --i) {
        if (++inst.assign[i] < n) break;
        inst.assign[i] = 0;
      }
      if (i < 0) break;
      if (k == 0) break;
    }
    if (ci.var_count == 0) continue;  // already emitted the single instance
  }
  return out;
}

constexpr int kUnknown = -1;

struct Tables {
  int n;
  std::vector<int8_t> cells;  // 3 * n * n, -1 = empty

  int get(int op, int i, int j) const { return cells[(op * n + i) * n + j]; }
};

// Evaluates a side. On success returns the value. Otherwise returns
// kUnknown; if the only undetermined lookup is the side's root operation,
// *forced_cell receives that cell's flat index (its arguments are known),
// else -1.
int eval_side(const CompiledSide& s, const int8_t* assign, const Tables& tb,
              int* forced_cell = nullptr) {
  if (forced_cell) *forced_cell = -1;
  int stack[32];
  int sp = 0;
  for (size_t k = 0; k < s.post.size(); ++k) {
    const auto& node = s.post[k];
    if (node.is_var) {
      stack[sp++] = assign[node.var];
    } else {
      int r = stack[--sp];
      int l = stack[--sp];
      int v = tb.get(node.op, l, r);
      if (v < 0) {
        if (forced_cell && k + 1 == s.post.size())
          *forced_cell = (node.op * tb.n + l) * tb.n + r;
        return kUnknown;
      }
      stack[sp++] = v;
    }
  }
  return stack[0];
}

// Instance status: 0 = open, 1 = decided (holds; stays decided deeper in the
// tree, undone on backtrack via the trail).
struct LimitHit {};

class Engine {
 public:
  Engine(const Theory& axioms, const Identity* target, int n,
         const SearchConfig& cfg)
      : n_(n), cfg_(cfg) {
    for (const auto& id : axioms.identities)
      compiled_.push_back(compile_identity(id));
    instances_ = ground_instances(compiled_, n);
    decided_.assign(instances_.size(), 0);
    if (target) {
      target_compiled_ = compile_identity(*target);
      target_instances_ = ground_instances({target_compiled_}, n);
      for (auto& inst : target_instances_) inst.id = &target_compiled_;
      target_decided_.assign(target_instances_.size(), 0);
    }
    tb_.n = n;
    tb_.cells.assign(3 * n * n, -1);
    start_ = std::chrono::steady_clock::now();
  }

  // Runs the search; calls sink(model) for each completed model that passes
  // the checks. sink returns false to stop the search.
  SearchStatus run(const std::function<bool(const Model&)>& sink) {
    sink_ = &sink;
    try {
      bool stopped = dfs(0);
      return stopped ? SearchStatus::Found : SearchStatus::Exhausted;
    } catch (const LimitHit&) {
      return SearchStatus::LimitExceeded;
    }
  }

  // Restricts the first decision cell to the given values (for work
  // splitting across threads).
  void restrict_first_cell(std::vector<int> values) {
    first_cell_values_ = std::move(values);
  }

  void set_stop_flag(std::atomic<bool>* flag) { stop_flag_ = flag; }

  SearchStats stats() const {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    return {nodes_, ms};
  }

 private:
  int cell_count() const { return 3 * n_ * n_; }

  bool has_target() const { return !target_instances_.empty(); }

  Model to_model() const {
    Model m = Model::filled(n_);
    for (int op = 0; op < 3; ++op)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          m.at(static_cast<Op>(op), i, j) = tb_.get(op, i, j);
    return m;
  }

  // Records a propagation-forced cell assignment on the cell trail.
  void assign_cell(int cell, int value) {
    cell_trail_.emplace_back(cell, max_used_);
    tb_.cells[cell] = static_cast<int8_t>(value);
    ++filled_;
    int idx = cell % (n_ * n_);
    max_used_ = std::max({max_used_, value, idx / n_, idx % n_});
  }

  // Scans undecided instances to a fixpoint; returns false on a violated
  // instance. An instance with one side known and the other blocked only at
  // its root operation forces that cell's value (unit propagation). Newly
  // decided instances go on the trail, forced cells on the cell trail.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < instances_.size(); ++i) {
        if (decided_[i]) continue;
        const Instance& inst = instances_[i];
        int lc, rc;
        int l = eval_side(inst.id->lhs, inst.assign.data(), tb_, &lc);
        int r = eval_side(inst.id->rhs, inst.assign.data(), tb_, &rc);
        if (l != kUnknown && r != kUnknown) {
          if (l != r) return false;
        } else if (l != kUnknown && rc >= 0) {
          assign_cell(rc, l);
          changed = true;
        } else if (r != kUnknown && lc >= 0) {
          assign_cell(lc, r);
          changed = true;
        } else if (lc >= 0 && lc == rc) {
          // Both sides reduce to the same open cell: holds vacuously.
        } else {
          continue;
        }
        decided_[i] = 1;
        trail_.push_back(static_cast<int>(i));
      }
    }
    if (has_target() && !target_violated_) {
      size_t open = 0;
      for (size_t i = 0; i < target_instances_.size(); ++i) {
        if (target_decided_[i]) continue;
        const Instance& inst = target_instances_[i];
        int l = eval_side(inst.id->lhs, inst.assign.data(), tb_);
        if (l == kUnknown) {
          ++open;
          continue;
        }
        int r = eval_side(inst.id->rhs, inst.assign.data(), tb_);
        if (r == kUnknown) {
          ++open;
          continue;
        }
        if (l != r) {
          target_violated_ = true;
          break;
        }
        target_decided_[i] = 1;
        target_trail_.push_back(static_cast<int>(i));
      }
      // Every completion of a branch on which target already holds on all
      // instances would satisfy it; no witness lives below.
      if (!target_violated_ && open == 0) return false;
    }
    return true;
  }

  int pick_cell() {
    if (cfg_.strategy == CellStrategy::RowMajor || filled_ == 0) {
      for (int c = 0; c < cell_count(); ++c)
        if (tb_.cells[c] < 0) return c;
      return -1;
    }
    // Most-constrained: the open cell with the fewest viable values.
    int best = -1, best_count = n_ + 1;
    for (int c = 0; c < cell_count(); ++c) {
      if (tb_.cells[c] >= 0) continue;
      int count = 0;
      int cap = value_cap(c);
      for (int v = 0; v < cap; ++v) {
        size_t trail_mark = trail_.size();
        size_t target_mark = target_trail_.size();
        size_t cell_mark = cell_trail_.size();
        bool violated_before = target_violated_;
        tb_.cells[c] = static_cast<int8_t>(v);
        if (propagate()) ++count;
        undo(trail_mark, target_mark, cell_mark, violated_before);
        tb_.cells[c] = -1;
      }
      if (count < best_count) {
        best_count = count;
        best = c;
      }
    }
    return best;
  }

  // LNH cap: candidate values run up to one past the largest domain element
  // used so far (as an assigned value or as an index of a touched cell).
  int value_cap(int cell) const {
    if (!cfg_.lnh) return n_;
    int idx = cell % (n_ * n_);
    int mx = std::max(max_used_, std::max(idx / n_, idx % n_));
    return std::min(n_, mx + 2);
  }

  void undo(size_t trail_mark, size_t target_mark, size_t cell_mark,
            bool violated_before) {
    while (trail_.size() > trail_mark) {
      decided_[trail_.back()] = 0;
      trail_.pop_back();
    }
    while (cell_trail_.size() > cell_mark) {
      auto [cell, prev_max] = cell_trail_.back();
      cell_trail_.pop_back();
      tb_.cells[cell] = -1;
      --filled_;
      max_used_ = prev_max;
    }
    while (target_trail_.size() > target_mark) {
      target_decided_[target_trail_.back()] = 0;
      target_trail_.pop_back();
    }
    target_violated_ = violated_before;
  }

  void bump_limits() {
    ++nodes_;
    if (nodes_ > cfg_.node_limit) throw LimitHit{};
    if (stop_flag_ && (nodes_ & 1023) == 0 &&
        stop_flag_->load(std::memory_order_relaxed))
      throw LimitHit{};  // treated as a stop, resolved by the caller
    if (cfg_.time_limit_ms > 0 && (nodes_ & 1023) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start_)
                    .count();
      if (ms > cfg_.time_limit_ms) throw LimitHit{};
    }
  }

  // Returns true when the sink asked to stop.
  bool dfs(int depth) {
    if (filled_ == cell_count()) {
      if (has_target() && !target_violated_) return false;
      return !(*sink_)(to_model());
    }
    int cell = pick_cell();
    int cap = value_cap(cell);
    for (int v = 0; v < cap; ++v) {
      if (depth == 0 && !first_cell_values_.empty() &&
          std::find(first_cell_values_.begin(), first_cell_values_.end(), v) ==
              first_cell_values_.end())
        continue;
      bump_limits();
      size_t trail_mark = trail_.size();
      size_t target_mark = target_trail_.size();
      size_t cell_mark = cell_trail_.size();
      bool violated_before = target_violated_;
      int max_before = max_used_;
      tb_.cells[cell] = static_cast<int8_t>(v);
      ++filled_;
      int idx = cell % (n_ * n_);
      max_used_ = std::max({max_used_, v, idx / n_, idx % n_});
      bool stop = false;
      if (propagate()) stop = dfs(depth + 1);
      undo(trail_mark, target_mark, cell_mark, violated_before);
      tb_.cells[cell] = -1;
      --filled_;
      max_used_ = max_before;
      if (stop) return true;
    }
    return false;
  }

  int n_;
  SearchConfig cfg_;
  std::vector<CompiledIdentity> compiled_;
  std::vector<Instance> instances_;
  std::vector<char> decided_;
  std::vector<int> trail_;
  std::vector<std::pair<int, int>> cell_trail_;  // (cell, previous max_used_)

  CompiledIdentity target_compiled_;
  std::vector<Instance> target_instances_;
  std::vector<char> target_decided_;
  std::vector<int> target_trail_;
  bool target_violated_ = false;

  Tables tb_;
  int filled_ = 0;
  int max_used_ = -1;
  long long nodes_ = 0;
  std::chrono::steady_clock::time_point start_;
  const std::function<bool(const Model&)>* sink_ = nullptr;
  std::vector<int> first_cell_values_;
  std::atomic<bool>* stop_flag_ = nullptr;
};

SearchResult search_one(const Theory& axioms, const Identity* target, int n,
                        const SearchConfig& cfg) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("model size must be between 1 and 6");

  if (cfg.workers <= 1) {
    Engine engine(axioms, target, n, cfg);
    SearchResult res;
    std::optional<Model> found;
    res.status = engine.run([&](const Model& m) {
      found = m;
      return false;
    });
    res.model = std::move(found);
    res.stats = engine.stats();
    return res;
  }

  // Split the first decision cell's values across workers. Any verified
  // witness is acceptable, so the first hit wins.
  int workers = std::min(cfg.workers, n);
  std::vector<std::vector<int>> partition(workers);
  for (int v = 0; v < n; ++v) partition[v % workers].push_back(v);

  std::atomic<bool> found_flag{false};
  std::mutex mu;
  SearchResult result;
  result.status = SearchStatus::Exhausted;
  std::vector<std::thread> threads;
  std::vector<SearchStatus> statuses(workers, SearchStatus::Exhausted);
  std::vector<SearchStats> stats(workers);

  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      SearchConfig local = cfg;
      local.workers = 1;
      Engine engine(axioms, target, n, local);
      engine.restrict_first_cell(partition[w]);
      engine.set_stop_flag(&found_flag);
      std::optional<Model> found;
      SearchStatus st = engine.run([&](const Model& m) {
        found = m;
        return false;
      });
      stats[w] = engine.stats();
      if (st == SearchStatus::Found && found) {
        std::lock_guard<std::mutex> lock(mu);
        if (!result.model) {
          result.model = std::move(found);
          found_flag.store(true);
        }
        statuses[w] = SearchStatus::Found;
      } else {
        statuses[w] = st;
      }
    });
  }
  for (auto& t : threads) t.join();

  for (int w = 0; w < workers; ++w) {
    result.stats.nodes += stats[w].nodes;
    result.stats.ms = std::max(result.stats.ms, stats[w].ms);
  }
  if (result.model) {
    result.status = SearchStatus::Found;
  } else {
    result.status = SearchStatus::Exhausted;
    for (auto st : statuses)
      if (st == SearchStatus::LimitExceeded)
        result.status = SearchStatus::LimitExceeded;
  }
  return result;
}

}  // namespace

SearchResult find_model(const Theory& t, int n, const SearchConfig& cfg) {
  return search_one(t, nullptr, n, cfg);
}

SearchResult find_witness(const Theory& axioms, const Identity& target, int n,
                          const SearchConfig& cfg) {
  if (axioms.find(target.name))
    throw std::invalid_argument("target must not be among the axioms");
  return search_one(axioms, &target, n, cfg);
}

EnumResult enumerate_models(const Theory& t, int n, size_t cap,
                            const SearchConfig& cfg) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("model size must be between 1 and 6");
  SearchConfig local = cfg;
  local.workers = 1;  // deterministic order
  Engine engine(t, nullptr, n, local);
  EnumResult res;
  SearchStatus st = engine.run([&](const Model& m) {
    res.models.push_back(m);
    return res.models.size() < cap;
  });
  res.stats = engine.stats();
  switch (st) {
    case SearchStatus::Found:
      res.status = EnumStatus::CapReached;
      break;
    case SearchStatus::Exhausted:
      res.status = EnumStatus::Complete;
      break;
    case SearchStatus::LimitExceeded:
      res.status = EnumStatus::LimitExceeded;
      break;
  }
  return res;
}

IndependenceReport independence_report(const Theory& t, int max_n,
                                       const SearchConfig& cfg) {
  IndependenceReport report;
  report.max_size = max_n;
  for (size_t i = 0; i < t.identities.size(); ++i) {
    const Identity& target = t.identities[i];
    Theory others;
    for (size_t j = 0; j < t.identities.size(); ++j)
      if (j != i) others.add(t.identities[j]);

    AxiomVerdict verdict;
    verdict.name = target.name;
    verdict.status = AxiomVerdict::Status::NoWitness;
    for (int n = 1; n <= max_n; ++n) {
      SearchResult r = find_witness(others, target, n, cfg);
      verdict.stats.nodes += r.stats.nodes;
      verdict.stats.ms += r.stats.ms;
      if (r.status == SearchStatus::Found) {
        // Search internals are never trusted: re-check by satisfaction.
        if (!all_hold(satisfies_theory(*r.model, others)) ||
            satisfies(*r.model, target).holds)
          throw std::logic_error("search returned an invalid witness");
        verdict.status = AxiomVerdict::Status::Witness;
        verdict.size = n;
        verdict.witness = std::move(r.model);
        break;
      }
      if (r.status == SearchStatus::LimitExceeded) {
        verdict.status = AxiomVerdict::Status::LimitExceeded;
        verdict.size = n;
        break;
      }
    }
    report.axioms.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace magmalab
