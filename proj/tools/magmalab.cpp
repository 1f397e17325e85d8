#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "magmalab/fixtures.hpp"
#include "magmalab/model.hpp"
#include "magmalab/proof.hpp"
#include "magmalab/search.hpp"
#include "magmalab/term.hpp"

namespace {

using namespace magmalab;
using ordered_json = nlohmann::ordered_json;

// Exit statuses: 0 affirmative, 1 usage/input error, 2 negative answer,
// 3 resource limit exceeded.
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNegative = 2;
constexpr int kLimit = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
}

Model load_model(const std::string& path) {
  return model_from_json(read_input(path));
}

Theory load_theory(const std::string& path) {
  return parse_theory(read_input(path));
}

ordered_json assignment_json(const Assignment& a) {
  ordered_json j = ordered_json::object();
  for (const auto& [name, v] : a) j[name] = v;
  return j;
}

std::string assignment_text(const Assignment& a) {
  std::string out;
  for (const auto& [name, v] : a) {
    if (!out.empty()) out += ", ";
    out += name + "=" + std::to_string(v);
  }
  return out;
}

ordered_json model_json(const Model& m) {
  return ordered_json::parse(model_to_json(m));
}

ordered_json verdicts_json(const std::vector<Verdict>& vs) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : vs) {
    ordered_json j;
    j["name"] = v.name;
    j["holds"] = v.holds;
    if (v.witness) j["witness"] = assignment_json(*v.witness);
    arr.push_back(std::move(j));
  }
  return arr;
}

SearchConfig make_config(bool no_lnh, int workers,
                         const std::string& strategy) {
  SearchConfig cfg = default_config();
  cfg.lnh = !no_lnh;
  cfg.workers = workers;
  if (strategy == "most-constrained")
    cfg.strategy = CellStrategy::MostConstrained;
  return cfg;
}

int cmd_check(const std::string& model_path, const std::string& theory_path,
              const std::string& axiom, bool pretty) {
  Model m = load_model(model_path);
  Theory th = load_theory(theory_path);
  Theory selected;
  if (!axiom.empty()) {
    const Identity* id = th.find(axiom);
    if (!id) {
      std::cerr << "error: no identity named '" << axiom << "'\n";
      return kInputError;
    }
    selected.add(*id);
  } else {
    selected = th;
  }
  auto verdicts = satisfies_theory(m, selected);
  if (pretty) {
    for (const auto& v : verdicts) {
      std::cout << v.name << (v.holds ? " HOLDS" : " FAILS");
      if (v.witness) std::cout << " at " << assignment_text(*v.witness);
      std::cout << "\n";
    }
  } else {
    ordered_json j;
    j["command"] = "check";
    j["results"] = verdicts_json(verdicts);
    j["all_hold"] = all_hold(verdicts);
    std::cout << j.dump(2) << "\n";
  }
  return all_hold(verdicts) ? kOk : kNegative;
}

int cmd_search(const std::string& theory_path, int size,
               const std::string& violate, bool all, long long limit,
               bool no_lnh, const std::string& out, int workers,
               const std::string& strategy) {
  if (size < 1 || size > 6) {
    std::cerr << "error: --size must be between 1 and 6\n";
    return kInputError;
  }
  Theory th = load_theory(theory_path);
  SearchConfig cfg = make_config(no_lnh, workers, strategy);

  if (all) {
    EnumResult res = enumerate_models(th, size, static_cast<size_t>(limit),
                                      cfg);
    ordered_json arr = ordered_json::array();
    for (const auto& m : res.models) arr.push_back(model_json(m));
    write_output(out, arr.dump(2) + "\n");
    if (res.status == EnumStatus::LimitExceeded) return kLimit;
    return res.models.empty() ? kNegative : kOk;
  }

  SearchResult res;
  if (!violate.empty()) {
    const Identity* target = th.find(violate);
    if (!target) {
      std::cerr << "error: no identity named '" << violate << "'\n";
      return kInputError;
    }
    Theory axioms;
    for (const auto& id : th.identities)
      if (id.name != violate) axioms.add(id);
    res = find_witness(axioms, *target, size, cfg);
  } else {
    res = find_model(th, size, cfg);
  }
  switch (res.status) {
    case SearchStatus::Found:
      write_output(out, model_to_json(*res.model));
      return kOk;
    case SearchStatus::Exhausted:
      std::cerr << "no model: space exhausted at size " << size << "\n";
      return kNegative;
    case SearchStatus::LimitExceeded:
      std::cerr << "search limit exceeded\n";
      return kLimit;
  }
  return kInputError;
}

int cmd_independence(const std::string& theory_path, int max_size, bool no_lnh,
                     int workers, bool pretty, const std::string& out) {
  Theory th = load_theory(theory_path);
  SearchConfig cfg = make_config(no_lnh, workers, "row-major");
  IndependenceReport report = independence_report(th, max_size, cfg);

  bool any_limit = false;
  if (pretty) {
    for (const auto& a : report.axioms) {
      std::cout << a.name << ": ";
      switch (a.status) {
        case AxiomVerdict::Status::Witness:
          std::cout << "witness at size " << a.size;
          break;
        case AxiomVerdict::Status::NoWitness:
          std::cout << "no witness up to size " << report.max_size;
          break;
        case AxiomVerdict::Status::LimitExceeded:
          std::cout << "limit exceeded at size " << a.size;
          any_limit = true;
          break;
      }
      std::cout << " (" << a.stats.nodes << " nodes, " << a.stats.ms
                << " ms)\n";
    }
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& a : report.axioms) {
      ordered_json j;
      j["name"] = a.name;
      switch (a.status) {
        case AxiomVerdict::Status::Witness:
          j["status"] = "witness";
          j["size"] = a.size;
          j["witness"] = model_json(*a.witness);
          break;
        case AxiomVerdict::Status::NoWitness:
          j["status"] = "none";
          j["max_size"] = report.max_size;
          break;
        case AxiomVerdict::Status::LimitExceeded:
          j["status"] = "limit";
          j["size"] = a.size;
          any_limit = true;
          break;
      }
      j["nodes"] = a.stats.nodes;
      j["ms"] = a.stats.ms;
      arr.push_back(std::move(j));
    }
    ordered_json top;
    top["command"] = "independence";
    top["max_size"] = report.max_size;
    top["axioms"] = std::move(arr);
    top["independent"] = report.all_witnessed();
    write_output(out, top.dump(2) + "\n");
  }
  if (report.all_witnessed()) return kOk;
  return any_limit ? kLimit : kNegative;
}

int cmd_verify(const std::vector<std::string>& proof_paths,
               const std::string& theory_path) {
  Theory axioms = load_theory(theory_path);
  std::vector<ProofScript> scripts;
  for (const auto& p : proof_paths)
    for (auto& s : collection_from_json(read_input(p)))
      scripts.push_back(std::move(s));

  ordered_json log = ordered_json::array();
  Registry reg;
  reg.entries = axioms;
  bool all_ok = true;
  for (const auto& s : scripts) {
    ordered_json j;
    j["goal"] = format_identity(s.goal);
    try {
      for (const auto& u : s.uses)
        if (!reg.find(u))
          throw ProofError("uses '" + u +
                           "', which is not an axiom or an earlier goal");
      reg.add(check_script(s, reg));
      j["ok"] = true;
    } catch (const ProofError& e) {
      j["ok"] = false;
      j["error"] = e.what();
      if (e.step >= 0) j["step"] = e.step;
      all_ok = false;
    }
    log.push_back(std::move(j));
    if (!all_ok) break;
  }
  ordered_json top;
  top["command"] = "verify";
  top["scripts"] = std::move(log);
  top["all_ok"] = all_ok;
  std::cout << top.dump(2) << "\n";
  return all_ok ? kOk : kNegative;
}

int cmd_fixtures(bool list, const std::string& emit, const std::string& out) {
  const Fixtures& f = fixtures();
  if (list) {
    for (const auto& [name, m] : f.models)
      std::cout << name << " (model, size " << m.size << ")\n";
    for (const auto& [name, th] : f.theories)
      std::cout << name << " (theory, " << th.identities.size()
                << " identities)\n";
    for (const auto& [name, pc] : f.proofs)
      std::cout << name << " (proofs, " << pc.scripts.size() << " scripts)\n";
    return kOk;
  }
  if (auto it = f.models.find(emit); it != f.models.end()) {
    write_output(out, model_to_json(it->second));
    return kOk;
  }
  if (auto it = f.theories.find(emit); it != f.theories.end()) {
    write_output(out, format_theory(it->second));
    return kOk;
  }
  if (auto it = f.proofs.find(emit); it != f.proofs.end()) {
    write_output(out, collection_to_json(it->second.scripts));
    return kOk;
  }
  std::cerr << "error: unknown fixture '" << emit << "'\n";
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equational toolkit for algebras with operations *, \\, /"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand(
      "check", "Evaluate a theory's identities on a model");
  std::string check_model, check_theory, check_axiom;
  bool check_pretty = false;
  check->add_option("--model", check_model)->required();
  check->add_option("--theory", check_theory)->required();
  check->add_option("--axiom", check_axiom);
  check->add_flag("--pretty", check_pretty);

  // search
  auto* search = app.add_subcommand(
      "search", "Find models of a theory, or countermodels of one identity");
  std::string search_theory, search_violate, search_out = "-";
  std::string search_strategy = "row-major";
  int search_size = 2, search_workers = 1;
  long long search_limit = 500;
  bool search_all = false, search_no_lnh = false;
  search->add_option("--theory", search_theory)->required();
  search->add_option("--size", search_size)->required();
  search->add_option("--violate", search_violate);
  search->add_flag("--all", search_all);
  search->add_option("--limit", search_limit);
  search->add_flag("--no-lnh", search_no_lnh);
  search->add_option("--out", search_out);
  search->add_option("--workers", search_workers);
  search->add_option("--strategy", search_strategy)
      ->check(CLI::IsMember({"row-major", "most-constrained"}));

  // independence
  auto* indep = app.add_subcommand(
      "independence", "Search for per-axiom countermodels of a theory");
  std::string indep_theory, indep_out = "-";
  int indep_max = 4, indep_workers = 1;
  bool indep_no_lnh = false, indep_pretty = false;
  indep->add_option("--theory", indep_theory)->required();
  indep->add_option("--max-size", indep_max)->required();
  indep->add_flag("--no-lnh", indep_no_lnh);
  indep->add_flag("--pretty", indep_pretty);
  indep->add_option("--workers", indep_workers);
  indep->add_option("--out", indep_out);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Check rewrite proof scripts against an axiom theory");
  std::vector<std::string> verify_proofs;
  std::string verify_theory;
  verify->add_option("--proofs", verify_proofs)->required()->expected(-1);
  verify->add_option("--theory", verify_theory)->required();

  // product
  auto* product = app.add_subcommand("product", "Direct product of two models");
  std::string prod_left, prod_right, prod_out = "-";
  product->add_option("--left", prod_left)->required();
  product->add_option("--right", prod_right)->required();
  product->add_option("--out", prod_out);

  // dual
  auto* dual = app.add_subcommand("dual", "Dual (mirrored) model");
  std::string dual_model_path, dual_out = "-";
  dual->add_option("--model", dual_model_path)->required();
  dual->add_option("--out", dual_out);

  // mirror
  auto* mirror = app.add_subcommand("mirror", "Mirror every identity of a theory");
  std::string mirror_theory, mirror_out = "-";
  mirror->add_option("--theory", mirror_theory)->required();
  mirror->add_option("--out", mirror_out);

  // fixtures
  auto* fix = app.add_subcommand("fixtures", "List or export built-in fixtures");
  std::string fix_emit, fix_out = "-";
  bool fix_list = false;
  fix->add_flag("--list", fix_list);
  fix->add_option("--emit", fix_emit);
  fix->add_option("--out", fix_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (check->parsed())
      return cmd_check(check_model, check_theory, check_axiom, check_pretty);
    if (search->parsed())
      return cmd_search(search_theory, search_size, search_violate, search_all,
                        search_limit, search_no_lnh, search_out, search_workers,
                        search_strategy);
    if (indep->parsed())
      return cmd_independence(indep_theory, indep_max, indep_no_lnh,
                              indep_workers, indep_pretty, indep_out);
    if (verify->parsed()) return cmd_verify(verify_proofs, verify_theory);
    if (product->parsed()) {
      Model p = direct_product(load_model(prod_left), load_model(prod_right));
      write_output(prod_out, model_to_json(p));
      return kOk;
    }
    if (dual->parsed()) {
      write_output(dual_out, model_to_json(dual_model(load_model(dual_model_path))));
      return kOk;
    }
    if (mirror->parsed()) {
      Theory th = load_theory(mirror_theory);
      Theory mirrored;
      for (const auto& id : th.identities) mirrored.add(mirror_identity(id));
      write_output(mirror_out, format_theory(mirrored));
      return kOk;
    }
    if (fix->parsed()) {
      if (!fix_list && fix_emit.empty()) {
        std::cerr << "error: pass --list or --emit NAME\n";
        return kInputError;
      }
      return cmd_fixtures(fix_list, fix_emit, fix_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
