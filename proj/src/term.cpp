#include "magmalab/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace magmalab {

char op_symbol(Op op) {
  switch (op) {
    case Op::Mul:
      return '*';
    case Op::Ldiv:
      return '\\';
    case Op::Rdiv:
      return '/';
  }
  return '?';
}

TermPtr make_var(std::string name) {
  auto t = std::make_shared<Term>();
  t->var = std::move(name);
  return t;
}

TermPtr make_app(Op op, TermPtr left, TermPtr right) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_var() != b->is_var()) return false;
  if (a->is_var()) return a->var == b->var;
  return a->op == b->op && equal(a->left, b->left) && equal(a->right, b->right);
}

int term_size(const TermPtr& t) {
  return t->is_var() ? 1 : 1 + term_size(t->left) + term_size(t->right);
}

int term_depth(const TermPtr& t) {
  return t->is_var() ? 0
                     : 1 + std::max(term_depth(t->left), term_depth(t->right));
}

static void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
  if (t->is_var()) {
    if (std::find(out.begin(), out.end(), t->var) == out.end())
      out.push_back(t->var);
    return;
  }
  collect_vars(t->left, out);
  collect_vars(t->right, out);
}

std::vector<std::string> variables_of(const TermPtr& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

std::string format_position(const Position& p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += p[i] ? '1' : '0';
  }
  return s;
}

std::optional<Position> parse_position(std::string_view s) {
  Position p;
  if (s.empty()) return p;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '0' && s[i] != '1') return std::nullopt;
    p.push_back(s[i] - '0');
    ++i;
    if (i < s.size()) {
      if (s[i] != '.') return std::nullopt;
      ++i;
      if (i == s.size()) return std::nullopt;  // trailing dot
    }
  }
  return p;
}

bool position_valid(const TermPtr& t, const Position& p) {
  return subterm_at(t, p) != nullptr;
}

TermPtr subterm_at(const TermPtr& t, const Position& p) {
  TermPtr cur = t;
  for (int step : p) {
    if (cur->is_var()) return nullptr;
    cur = step ? cur->right : cur->left;
  }
  return cur;
}

TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& sub) {
  if (p.empty()) return sub;
  if (t->is_var()) return nullptr;
  Position rest(p.begin() + 1, p.end());
  if (p.front() == 0) {
    auto l = replace_at(t->left, rest, sub);
    return l ? make_app(t->op, l, t->right) : nullptr;
  }
  auto r = replace_at(t->right, rest, sub);
  return r ? make_app(t->op, t->left, r) : nullptr;
}

static void collect_positions(const TermPtr& t, Position& cur,
                              std::vector<Position>& out) {
  out.push_back(cur);
  if (t->is_var()) return;
  cur.push_back(0);
  collect_positions(t->left, cur, out);
  cur.back() = 1;
  collect_positions(t->right, cur, out);
  cur.pop_back();
}

std::vector<Position> all_positions(const TermPtr& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const Binding& binding) {
  if (t->is_var()) {
    auto it = binding.find(t->var);
    return it == binding.end() ? t : it->second;
  }
  return make_app(t->op, substitute(t->left, binding),
                  substitute(t->right, binding));
}

static bool match_into(const TermPtr& pattern, const TermPtr& subject,
                       Binding& b) {
  if (pattern->is_var()) {
    auto [it, inserted] = b.emplace(pattern->var, subject);
    return inserted || equal(it->second, subject);
  }
  if (subject->is_var() || pattern->op != subject->op) return false;
  return match_into(pattern->left, subject->left, b) &&
         match_into(pattern->right, subject->right, b);
}

std::optional<Binding> match(const TermPtr& pattern, const TermPtr& subject) {
  Binding b;
  if (match_into(pattern, subject, b)) return b;
  return std::nullopt;
}

std::optional<Binding> match_at(const TermPtr& t, const TermPtr& pattern,
                                const Position& p) {
  auto sub = subterm_at(t, p);
  if (!sub) return std::nullopt;
  return match(pattern, sub);
}

std::optional<TermPtr> rewrite_at(const TermPtr& t, const Identity& id,
                                  Direction dir, const Position& p) {
  auto sub = subterm_at(t, p);
  if (!sub) throw std::out_of_range("invalid position in term");
  const TermPtr& source = dir == Direction::L2R ? id.lhs : id.rhs;
  const TermPtr& target = dir == Direction::L2R ? id.rhs : id.lhs;
  auto b = match(source, sub);
  if (!b) return std::nullopt;
  return replace_at(t, p, substitute(target, *b));
}

TermPtr mirror_term(const TermPtr& t) {
  if (t->is_var()) return t;
  Op op = t->op;
  if (op == Op::Ldiv)
    op = Op::Rdiv;
  else if (op == Op::Rdiv)
    op = Op::Ldiv;
  return make_app(op, mirror_term(t->right), mirror_term(t->left));
}

Identity mirror_identity(const Identity& id) {
  return {id.name + "~mirror", mirror_term(id.lhs), mirror_term(id.rhs)};
}

Position mirror_position(const Position& p) {
  Position out = p;
  for (int& step : out) step = 1 - step;
  return out;
}

const Identity* Theory::find(const std::string& name) const {
  for (const auto& id : identities)
    if (id.name == name) return &id;
  return nullptr;
}

void Theory::add(Identity id) {
  if (find(id.name))
    throw std::invalid_argument("duplicate identity name: " + id.name);
  identities.push_back(std::move(id));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool at_end() { return peek() == '\0'; }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size() || !std::isalpha((unsigned char)text[pos]))
      throw ParseError("expected a variable", pos);
    while (pos < text.size() && std::isalnum((unsigned char)text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  std::optional<Op> try_op() {
    switch (peek()) {
      case '*':
        ++pos;
        return Op::Mul;
      case '\\':
        ++pos;
        return Op::Ldiv;
      case '/':
        ++pos;
        return Op::Rdiv;
      default:
        return std::nullopt;
    }
  }
};

TermPtr parse_factor(Lexer& lx);

// All three operators share one precedence level. Chains of one operator
// associate to the left; mixing operators without parentheses is ambiguous
// and rejected.
TermPtr parse_chain(Lexer& lx) {
  TermPtr acc = parse_factor(lx);
  std::optional<Op> chain_op;
  while (true) {
    size_t op_pos = (lx.skip_ws(), lx.pos);
    auto op = lx.try_op();
    if (!op) break;
    if (chain_op && *chain_op != *op)
      throw ParseError("ambiguous mixed-operator chain; add parentheses",
                       op_pos);
    chain_op = *op;
    acc = make_app(*op, acc, parse_factor(lx));
  }
  return acc;
}

TermPtr parse_factor(Lexer& lx) {
  if (lx.peek() == '(') {
    ++lx.pos;
    TermPtr t = parse_chain(lx);
    if (lx.peek() != ')') throw ParseError("expected ')'", lx.pos);
    ++lx.pos;
    return t;
  }
  return make_var(lx.ident());
}

bool valid_name(std::string_view s) {
  if (s.empty() || !std::isalnum((unsigned char)s.front())) return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_' && c != '.' && c != '~' &&
        c != '-' && c != '(' && c != ')')
      return false;
  return true;
}

}  // namespace

TermPtr parse_term(std::string_view text) {
  Lexer lx{text};
  TermPtr t = parse_chain(lx);
  if (!lx.at_end()) throw ParseError("unexpected trailing input", lx.pos);
  return t;
}

Identity parse_identity(std::string_view text) {
  size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("expected 'NAME: term = term'", 0);
  std::string name(text.substr(0, colon));
  while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
    name.pop_back();
  while (!name.empty() && (name.front() == ' ' || name.front() == '\t'))
    name.erase(name.begin());
  if (!valid_name(name)) throw ParseError("invalid identity name", 0);

  Lexer lx{text};
  lx.pos = colon + 1;
  TermPtr lhs = parse_chain(lx);
  if (lx.peek() != '=') throw ParseError("expected '='", lx.pos);
  ++lx.pos;
  TermPtr rhs = parse_chain(lx);
  if (!lx.at_end()) throw ParseError("unexpected trailing input", lx.pos);
  return {std::move(name), std::move(lhs), std::move(rhs)};
}

Theory parse_theory(std::string_view text) {
  Theory th;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) {
      try {
        th.add(parse_identity(line));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " on line " +
                             std::to_string(line_no),
                         start);
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " on line " +
                             std::to_string(line_no),
                         start + e.position);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return th;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_term(const TermPtr& t, std::string& out, const Op* parent_op,
                bool right_child) {
  if (t->is_var()) {
    out += t->var;
    return;
  }
  bool parens = parent_op && (right_child || *parent_op != t->op);
  if (parens) out += '(';
  print_term(t->left, out, &t->op, false);
  out += ' ';
  out += op_symbol(t->op);
  out += ' ';
  print_term(t->right, out, &t->op, true);
  if (parens) out += ')';
}

}  // namespace

std::string format_term(const TermPtr& t) {
  std::string out;
  print_term(t, out, nullptr, false);
  return out;
}

std::string format_identity(const Identity& id) {
  return id.name + ": " + format_term(id.lhs) + " = " + format_term(id.rhs);
}

std::string format_theory(const Theory& t) {
  std::string out;
  for (const auto& id : t.identities) {
    out += format_identity(id);
    out += '\n';
  }
  return out;
}

Identity canonical_rename(const Identity& id) {
  std::vector<std::string> vars = variables_of(id.lhs);
  collect_vars(id.rhs, vars);
  Binding b;
  for (size_t i = 0; i < vars.size(); ++i)
    b[vars[i]] = make_var("v" + std::to_string(i));
  return {id.name, substitute(id.lhs, b), substitute(id.rhs, b)};
}

bool renaming_equivalent(const Identity& a, const Identity& b) {
  Identity ca = canonical_rename(a), cb = canonical_rename(b);
  return equal(ca.lhs, cb.lhs) && equal(ca.rhs, cb.rhs);
}

}  // namespace magmalab
