#include "magmalab/model.hpp"

#include <nlohmann/json.hpp>

namespace magmalab {

using ordered_json = nlohmann::ordered_json;

Model Model::filled(int size, int value) {
  Model m;
  m.size = size;
  for (auto& t : m.tables) t.assign(size * size, value);
  return m;
}

bool operator==(const Model& a, const Model& b) {
  return a.size == b.size && a.tables == b.tables;
}

int eval_term(const TermPtr& t, const Model& m, const Assignment& a) {
  if (t->is_var()) {
    for (const auto& [name, v] : a)
      if (name == t->var) return v;
    throw std::runtime_error("unbound variable: " + t->var);
  }
  return m.at(t->op, eval_term(t->left, m, a), eval_term(t->right, m, a));
}

Verdict satisfies(const Model& m, const Identity& id) {
  std::vector<std::string> vars = variables_of(id.lhs);
  for (const auto& v : variables_of(id.rhs))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

  Assignment a;
  for (const auto& v : vars) a.emplace_back(v, 0);

  // Odometer with the first variable most significant: lexicographic order.
  while (true) {
    if (eval_term(id.lhs, m, a) != eval_term(id.rhs, m, a))
      return {id.name, false, a};
    int i = static_cast<int>(a.size()) - 1;
    for (; i >= 0; --i) {
      if (++a[i].second < m.size) break;
      a[i].second = 0;
    }
    if (i < 0) break;
  }
  return {id.name, true, std::nullopt};
}

std::vector<Verdict> satisfies_theory(const Model& m, const Theory& t) {
  std::vector<Verdict> out;
  out.reserve(t.identities.size());
  for (const auto& id : t.identities) out.push_back(satisfies(m, id));
  return out;
}

bool all_hold(const std::vector<Verdict>& vs) {
  for (const auto& v : vs)
    if (!v.holds) return false;
  return true;
}

Model direct_product(const Model& a, const Model& b) {
  if (a.size * b.size > kMaxModelSize)
    throw std::invalid_argument("product size exceeds maximum of " +
                                std::to_string(kMaxModelSize));
  Model p = Model::filled(a.size * b.size);
  for (Op op : {Op::Mul, Op::Ldiv, Op::Rdiv})
    for (int i1 = 0; i1 < a.size; ++i1)
      for (int j1 = 0; j1 < b.size; ++j1)
        for (int i2 = 0; i2 < a.size; ++i2)
          for (int j2 = 0; j2 < b.size; ++j2)
            p.at(op, i1 * b.size + j1, i2 * b.size + j2) =
                a.at(op, i1, i2) * b.size + b.at(op, j1, j2);
  return p;
}

Model dual_model(const Model& m) {
  Model d = Model::filled(m.size);
  for (int i = 0; i < m.size; ++i)
    for (int j = 0; j < m.size; ++j) {
      d.at(Op::Mul, i, j) = m.at(Op::Mul, j, i);
      d.at(Op::Ldiv, i, j) = m.at(Op::Rdiv, j, i);
      d.at(Op::Rdiv, i, j) = m.at(Op::Ldiv, j, i);
    }
  return d;
}

namespace {

const Theory& division_identities() {
  static const Theory th = parse_theory(
      "QG1: x \\ (x * y) = y\n"
      "QG2: (x * y) / y = x\n"
      "QG3: x * (x \\ y) = y\n"
      "QG4: (x / y) * y = x\n");
  return th;
}

const Theory& band_identities() {
  static const Theory th = parse_theory(
      "B1: x * x = x\n"
      "B2: (x * y) * z = x * (y * z)\n"
      "B3: (x * y) * (z * w) = x * w\n");
  return th;
}

}  // namespace

bool is_quasigroup(const Model& m) {
  return all_hold(satisfies_theory(m, division_identities()));
}

bool is_loop(const Model& m) {
  static const Identity extra = parse_identity("LE: x \\ x = y / y");
  return is_quasigroup(m) && satisfies(m, extra).holds;
}

bool is_rectangular_band(const Model& m) {
  const auto& mul = m.tables[static_cast<int>(Op::Mul)];
  if (m.tables[static_cast<int>(Op::Ldiv)] != mul ||
      m.tables[static_cast<int>(Op::Rdiv)] != mul)
    return false;
  return all_hold(satisfies_theory(m, band_identities()));
}

std::string model_to_json(const Model& m) {
  ordered_json j;
  j["size"] = m.size;
  const char* keys[3] = {"mul", "ldiv", "rdiv"};
  for (int op = 0; op < 3; ++op) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.size; ++i) {
      ordered_json row = ordered_json::array();
      for (int k = 0; k < m.size; ++k)
        row.push_back(m.tables[op][i * m.size + k]);
      rows.push_back(std::move(row));
    }
    j[keys[op]] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

Model model_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid model file: ") + e.what(), 0);
  }
  if (!j.is_object() || !j.contains("size") || !j["size"].is_number_integer())
    throw ParseError("model file must be an object with integer 'size'", 0);
  int n = j["size"].get<int>();
  if (n < 1 || n > kMaxModelSize)
    throw ParseError("model size out of range [1, 64]", 0);
  Model m = Model::filled(n);
  const char* keys[3] = {"mul", "ldiv", "rdiv"};
  for (int op = 0; op < 3; ++op) {
    if (!j.contains(keys[op]) || !j[keys[op]].is_array() ||
        j[keys[op]].size() != static_cast<size_t>(n))
      throw ParseError(std::string("model field '") + keys[op] +
                           "' must be an array of " + std::to_string(n) +
                           " rows",
                       0);
    for (int i = 0; i < n; ++i) {
      const auto& row = j[keys[op]][i];
      if (!row.is_array() || row.size() != static_cast<size_t>(n))
        throw ParseError("model rows must have length equal to size", 0);
      for (int k = 0; k < n; ++k) {
        if (!row[k].is_number_integer())
          throw ParseError("model entries must be integers", 0);
        int v = row[k].get<int>();
        if (v < 0 || v >= n)
          throw ParseError("model entry out of domain range", 0);
        m.tables[op][i * n + k] = v;
      }
    }
  }
  return m;
}

}  // namespace magmalab
