#pragma once

#include <declare/core.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace declare::ltlf
{

enum class Op : std::uint8_t
{
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  WeakNext,
  Until,
  Release,
  WeakUntil,
  Eventually,
  Globally,
};

using NodeId = std::uint32_t;

struct Node
{
  Op op = Op::True;
  Activity atom;                 // only for Op::Atom
  std::vector<NodeId> children;  // And/Or: two or more; binary ops: exactly two

  friend bool operator==( const Node&, const Node& ) = default;
};

/*! \brief LTLf formula stored as a preorder array of nodes.
 *
 * The root has id 0 and every child has a larger id than its parent, so a
 * reverse scan over ids visits sub-formulas before the formulas containing
 * them. Two formulas are structurally equal iff their node arrays are equal.
 */
class Formula
{
public:
  /// The constant true.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula atom( Activity a );
  static Formula atom( std::string_view label ) { return atom( Activity::intern( label ) ); }

  static Formula make_not( const Formula& f );
  /// Flattening is not applied; a single operand is returned as-is, none gives top/bottom.
  static Formula make_and( std::vector<Formula> operands );
  static Formula make_or( std::vector<Formula> operands );
  static Formula implies( const Formula& lhs, const Formula& rhs );
  static Formula iff( const Formula& lhs, const Formula& rhs );
  static Formula next( const Formula& f );
  static Formula weak_next( const Formula& f );
  static Formula until( const Formula& lhs, const Formula& rhs );
  static Formula release( const Formula& lhs, const Formula& rhs );
  static Formula weak_until( const Formula& lhs, const Formula& rhs );
  static Formula eventually( const Formula& f );
  static Formula globally( const Formula& f );

  NodeId root() const noexcept { return 0; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node( NodeId id ) const { return nodes_[id]; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  /// Copy of the sub-formula rooted at `id`.
  Formula subformula( NodeId id ) const;

  /// Atoms occurring in the formula, sorted by label.
  std::vector<Activity> atoms() const;

  friend bool operator==( const Formula&, const Formula& ) = default;

private:
  static Formula compose( Op op, std::initializer_list<const Formula*> kids );
  static Formula compose( Op op, const std::vector<Formula>& kids );
  std::vector<Node> nodes_;
};

Formula operator!( const Formula& f );
Formula operator&&( const Formula& a, const Formula& b );
Formula operator||( const Formula& a, const Formula& b );

class ParseError : public Error
{
public:
  ParseError( const std::string& message, std::size_t offset );
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/*! \brief Parses the textual formula grammar.
 *
 * Atoms are identifiers or double-quoted labels. Precedence from tightest:
 * unary (`!`, `X`, `Xw`, `F`, `G`), then `U`/`W`/`R`, `&`, `|`, `->`, `<->`.
 * Binary temporal operators, `->` and `<->` associate to the right; chains of
 * `&` or `|` become a single n-ary node. `true`/`false` are constants.
 */
Formula parse_formula( std::string_view text );

/// Minimal-parenthesis rendering that reparses to a structurally equal formula.
std::string to_string( const Formula& f );

/// Reified syntax-tree facts, one per node, e.g. `always(0,1)`, `atom(2,arg_0)`.
/// Atoms are printed through `atom_names` when mapped, else by label.
std::vector<std::string> reified_facts( const Formula& f, const std::map<Activity, std::string>& atom_names = {} );

/// Template definition with arg_0 := activation and arg_1 := target.
Formula template_formula( TemplateKind kind, Activity activation, Activity target );

/// Truth value on the empty trace; shared by every backend.
bool ev_empty( const Formula& f );

/// Per-(node, position) truth values for one trace.
class EvalTable
{
public:
  EvalTable( std::size_t nodes, std::size_t positions );
  bool at( NodeId node, std::size_t pos ) const { return bits_[node * positions_ + pos] != 0; }
  void set( NodeId node, std::size_t pos, bool v ) { bits_[node * positions_ + pos] = v ? 1 : 0; }
  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t positions() const noexcept { return positions_; }

private:
  std::size_t nodes_;
  std::size_t positions_;
  std::vector<std::uint8_t> bits_;
};

struct EvalStats
{
  std::uint64_t table_fills = 0;
};

/// Full table, filled backward over positions and children-first over nodes.
EvalTable eval_table( const Formula& f, const Trace& trace, EvalStats* stats = nullptr );

/// Whether the trace is a model of `f`; the empty trace yields ev_empty(f).
bool eval_tree( const Formula& f, const Trace& trace, EvalStats* stats = nullptr );

/// Negation normal form: only atoms appear under negation, and Implies/Iff are expanded.
Formula nnf( const Formula& f );
bool is_nnf( const Formula& f );

} // namespace declare::ltlf
