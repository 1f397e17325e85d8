#include "magmalab/proof.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace magmalab {

using ordered_json = nlohmann::ordered_json;

namespace {

// Tries the step at one position. The binding is reconstructed from both the
// source side (against current) and the target side (against the result), so
// reversed identities with extra variables check without explicit
// substitutions.
bool step_fits_at(const TermPtr& current, const TermPtr& result,
                  const TermPtr& source, const TermPtr& target,
                  const Position& p) {
  auto cur_sub = subterm_at(current, p);
  auto res_sub = subterm_at(result, p);
  if (!cur_sub || !res_sub) return false;
  // Contexts outside p must agree.
  if (!equal(replace_at(current, p, res_sub), result)) return false;
  auto b1 = match(source, cur_sub);
  if (!b1) return false;
  auto b2 = match(target, res_sub);
  if (!b2) return false;
  Binding merged = *b1;
  for (const auto& [name, t] : *b2) {
    auto [it, inserted] = merged.emplace(name, t);
    if (!inserted && !equal(it->second, t)) return false;
  }
  return equal(substitute(source, merged), cur_sub) &&
         equal(substitute(target, merged), res_sub);
}

}  // namespace

TermPtr check_step(const TermPtr& current, const ProofStep& step,
                   const Registry& reg) {
  const Identity* id = reg.find(step.by);
  if (!id) throw ProofError("unresolved identity name: " + step.by);
  const TermPtr& source = step.dir == Direction::L2R ? id->lhs : id->rhs;
  const TermPtr& target = step.dir == Direction::L2R ? id->rhs : id->lhs;

  if (step.at) {
    if (!step_fits_at(current, step.result, source, target, *step.at))
      throw ProofError("no match for " + step.by + " at position '" +
                       format_position(*step.at) + "'");
    return step.result;
  }

  int hits = 0;
  for (const auto& p : all_positions(current)) {
    if (step_fits_at(current, step.result, source, target, p)) ++hits;
    if (hits > 1) break;
  }
  if (hits == 0)
    throw ProofError("no position matches " + step.by + " toward the result");
  if (hits > 1)
    throw ProofError("ambiguous: " + step.by +
                     " reaches the result at multiple positions");
  return step.result;
}

Identity check_script(const ProofScript& s, const Registry& reg) {
  if (!equal(s.start, s.goal.lhs))
    throw ProofError("start term differs from the goal's left side");
  const TermPtr& last = s.steps.empty() ? s.start : s.steps.back().result;
  if (!equal(last, s.goal.rhs))
    throw ProofError("final term differs from the goal's right side");
  for (const auto& st : s.steps)
    if (std::find(s.uses.begin(), s.uses.end(), st.by) == s.uses.end())
      throw ProofError("step justification '" + st.by +
                       "' is not listed in uses");

  TermPtr current = s.start;
  for (size_t i = 0; i < s.steps.size(); ++i) {
    try {
      current = check_step(current, s.steps[i], reg);
    } catch (const ProofError& e) {
      throw ProofError(e.what(), static_cast<int>(i));
    }
  }
  return s.goal;
}

NamePairing standard_pairing() {
  NamePairing p;
  auto pair = [&p](const std::string& a, const std::string& b) {
    p[a] = b;
    p[b] = a;
  };
  pair("Q1", "Q2");
  pair("Q3", "Q4");
  pair("Q5", "Q6");
  pair("K5", "K10");
  pair("K6", "K12");
  pair("K7", "K11");
  pair("K8", "K9");
  pair("K14", "K15");
  p["L"] = "L";
  pair("E1", "E1m");
  pair("A1", "A1m");
  pair("A2", "A2m");
  pair("A3", "A3m");
  return p;
}

namespace {

std::string paired_name(const std::string& name, const NamePairing& pairing) {
  auto it = pairing.find(name);
  if (it == pairing.end())
    throw ProofError("no mirror partner for identity '" + name + "'");
  return it->second;
}

}  // namespace

ProofScript mirror_script(const ProofScript& s, const NamePairing& pairing) {
  ProofScript out;
  out.goal = {paired_name(s.goal.name, pairing), mirror_term(s.goal.lhs),
              mirror_term(s.goal.rhs)};
  out.start = mirror_term(s.start);
  for (const auto& st : s.steps) {
    ProofStep m;
    m.result = mirror_term(st.result);
    m.by = paired_name(st.by, pairing);
    m.dir = st.dir;
    if (st.at) m.at = mirror_position(*st.at);
    out.steps.push_back(std::move(m));
  }
  for (const auto& u : s.uses) out.uses.push_back(paired_name(u, pairing));
  return out;
}

Registry check_collection(const std::vector<ProofScript>& scripts,
                          const Theory& axioms) {
  Registry reg;
  reg.entries = axioms;
  for (const auto& s : scripts) {
    for (const auto& u : s.uses)
      if (!reg.find(u))
        throw ProofError("script '" + s.goal.name + "' uses '" + u +
                         "', which is not an axiom or an earlier goal");
    try {
      reg.add(check_script(s, reg));
    } catch (const ProofError& e) {
      throw ProofError("script '" + s.goal.name + "': " + e.what(), e.step);
    }
  }
  return reg;
}

// ---------------------------------------------------------------------------
// JSON representation

namespace {

ordered_json script_json(const ProofScript& s) {
  ordered_json j;
  j["goal"] = format_identity(s.goal);
  j["uses"] = s.uses;
  j["start"] = format_term(s.start);
  ordered_json steps = ordered_json::array();
  for (const auto& st : s.steps) {
    ordered_json js;
    js["term"] = format_term(st.result);
    js["by"] = st.by;
    js["dir"] = st.dir == Direction::L2R ? "lr" : "rl";
    if (st.at) js["at"] = format_position(*st.at);
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j;
}

ProofScript script_from(const ordered_json& j) {
  if (!j.is_object() || !j.contains("goal") || !j.contains("start") ||
      !j.contains("steps"))
    throw ParseError("proof script needs 'goal', 'start', and 'steps'", 0);
  ProofScript s;
  s.goal = parse_identity(j["goal"].get<std::string>());
  s.start = parse_term(j["start"].get<std::string>());
  if (j.contains("uses"))
    for (const auto& u : j["uses"]) s.uses.push_back(u.get<std::string>());
  for (const auto& js : j["steps"]) {
    ProofStep st;
    st.result = parse_term(js.at("term").get<std::string>());
    st.by = js.at("by").get<std::string>();
    std::string dir = js.at("dir").get<std::string>();
    if (dir == "lr")
      st.dir = Direction::L2R;
    else if (dir == "rl")
      st.dir = Direction::R2L;
    else
      throw ParseError("step 'dir' must be \"lr\" or \"rl\"", 0);
    if (js.contains("at")) {
      auto p = parse_position(js["at"].get<std::string>());
      if (!p) throw ParseError("bad step position", 0);
      st.at = *p;
    }
    s.steps.push_back(std::move(st));
  }
  return s;
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid proof file: ") + e.what(), 0);
  }
}

}  // namespace

std::string script_to_json(const ProofScript& s) {
  return script_json(s).dump(2) + "\n";
}

ProofScript script_from_json(const std::string& text) {
  return script_from(parse_json(text));
}

std::string collection_to_json(const std::vector<ProofScript>& scripts) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : scripts) arr.push_back(script_json(s));
  return arr.dump(2) + "\n";
}

std::vector<ProofScript> collection_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  std::vector<ProofScript> out;
  if (j.is_object()) {
    out.push_back(script_from(j));
  } else if (j.is_array()) {
    for (const auto& js : j) out.push_back(script_from(js));
  } else {
    throw ParseError("proof file must be a script object or an array", 0);
  }
  return out;
}

}  // namespace magmalab
