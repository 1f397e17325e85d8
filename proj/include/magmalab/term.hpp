#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace magmalab {

// The signature has exactly three binary operations.
enum class Op { Mul, Ldiv, Rdiv };

char op_symbol(Op op);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable binary tree: a leaf carries a variable name, an inner node an
// operator and two children. Shared freely; never mutated after construction.
struct Term {
  Op op{Op::Mul};
  std::string var;  // nonempty iff leaf
  TermPtr left, right;

  bool is_var() const { return left == nullptr; }
};

TermPtr make_var(std::string name);
TermPtr make_app(Op op, TermPtr left, TermPtr right);

bool equal(const TermPtr& a, const TermPtr& b);
int term_size(const TermPtr& t);
int term_depth(const TermPtr& t);

// Variables in left-to-right first-occurrence order.
std::vector<std::string> variables_of(const TermPtr& t);

// Path from the root: 0 = left child, 1 = right child. Empty path = root.
using Position = std::vector<int>;

std::string format_position(const Position& p);             // "0.1", "" for root
std::optional<Position> parse_position(std::string_view s); // nullopt on bad syntax

bool position_valid(const TermPtr& t, const Position& p);
TermPtr subterm_at(const TermPtr& t, const Position& p);  // nullptr if invalid
TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& sub);
std::vector<Position> all_positions(const TermPtr& t);  // preorder

using Binding = std::map<std::string, TermPtr>;

// Simultaneous substitution; unbound variables stay fixed.
TermPtr substitute(const TermPtr& t, const Binding& binding);

// One-sided syntactic matching: the unique binding with
// substitute(pattern, b) == subject, if any. Nonlinear patterns require
// structurally equal arguments.
std::optional<Binding> match(const TermPtr& pattern, const TermPtr& subject);
std::optional<Binding> match_at(const TermPtr& t, const TermPtr& pattern,
                                const Position& p);

struct Identity {
  std::string name;
  TermPtr lhs, rhs;
};

enum class Direction { L2R, R2L };

// Rewrites the subterm at p if the directed source side of id matches there.
// Throws std::out_of_range on an invalid position.
std::optional<TermPtr> rewrite_at(const TermPtr& t, const Identity& id,
                                  Direction dir, const Position& p);

// The duality involution: swaps argument order and exchanges \ with /.
TermPtr mirror_term(const TermPtr& t);
Identity mirror_identity(const Identity& id);  // name suffixed "~mirror"
Position mirror_position(const Position& p);   // 0 <-> 1 along the path

struct Theory {
  std::vector<Identity> identities;

  const Identity* find(const std::string& name) const;
  void add(Identity id);  // throws std::invalid_argument on duplicate name
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
  size_t position;
};

TermPtr parse_term(std::string_view text);
Identity parse_identity(std::string_view text);  // NAME ":" term "=" term

// The .eq format: one identity per line, '#' starts a comment, blanks ignored.
Theory parse_theory(std::string_view text);

std::string format_term(const TermPtr& t);
std::string format_identity(const Identity& id);
std::string format_theory(const Theory& t);

// Variables renumbered v0, v1, ... in first-occurrence order (lhs then rhs).
Identity canonical_rename(const Identity& id);
bool renaming_equivalent(const Identity& a, const Identity& b);

}  // namespace magmalab
