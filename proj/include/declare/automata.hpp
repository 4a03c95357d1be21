#pragma once

#include <declare/core.hpp>
#include <declare/ltlf.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace declare::automata
{

using StateId = std::uint32_t;
/// Symbol classes are indexed 0..named-1 for named activities and `named` for "other".
using SymbolIndex = std::uint32_t;

class StateBudgetExceeded : public Error
{
public:
  using Error::Error;
};

/*! \brief Complete DFA over named activities plus one wildcard class.
 *
 * The wildcard class stands for every activity that is not named.
 */
class Dfa
{
public:
  /// Throws InvalidArgument unless the transition table is total and in range.
  Dfa( std::vector<Activity> named, std::size_t states, std::vector<StateId> transitions, StateId initial,
       std::vector<bool> accepting );

  std::span<const Activity> named() const noexcept { return named_; }
  std::size_t state_count() const noexcept { return states_; }
  std::size_t symbol_count() const noexcept { return named_.size() + 1; }
  SymbolIndex other_symbol() const noexcept { return static_cast<SymbolIndex>( named_.size() ); }
  StateId initial() const noexcept { return initial_; }
  bool accepting( StateId s ) const { return accepting_[s]; }
  StateId next( StateId s, SymbolIndex sym ) const { return transitions_[s * symbol_count() + sym]; }
  /// Symbol class of an activity under the simplicity assumption.
  SymbolIndex classify( Activity a ) const;

  /// Same automaton with the accepting set complemented.
  Dfa complement() const;
  /// Copy with the accepting bit of `s` flipped.
  Dfa with_accepting_flipped( StateId s ) const;

  friend bool operator==( const Dfa&, const Dfa& ) = default;

private:
  std::vector<Activity> named_;
  std::size_t states_;
  std::vector<StateId> transitions_;
  StateId initial_;
  std::vector<bool> accepting_;
};

struct CompileOptions
{
  std::size_t max_states = 4096;
};

/*! \brief Builds a DFA whose states are simplified residual formulas.
 *
 * The formula is brought into negation normal form first. Each transition
 * progresses the residual through one consumed symbol class, and a state is
 * accepting iff its residual holds on the empty continuation. Throws
 * StateBudgetExceeded when more than `max_states` residuals are reached.
 */
Dfa compile( const ltlf::Formula& f, const CompileOptions& options = {} );

/// Moore partition refinement over reachable states; states renumbered breadth-first from the initial one.
Dfa minimize( const Dfa& d );

bool run( const Dfa& d, const Trace& trace );

/// minimize(compile(template formula)).
Dfa constraint_dfa( TemplateKind kind, Activity activation, Activity target );
inline Dfa constraint_dfa( const Constraint& c ) { return constraint_dfa( c.kind, c.activation, c.target ); }

/// Names used for the symbol classes when exporting; unmapped activities use their label.
using SymbolNames = std::map<Activity, std::string>;

/// arg_0 for the activation and arg_1 for the target.
SymbolNames argument_names( Activity activation, Activity target );

/// {"kind", "initial", "accepting", "transitions": [[from, symbol, to], ...]} with symbol "*" for the wildcard.
std::string to_facts_json( const Dfa& d, std::string_view kind, const SymbolNames& names = {} );
/// `template/4`, `initial/2`, `accepting/2` facts, one per line.
std::string to_facts( const Dfa& d, std::string_view kind, const SymbolNames& names = {} );
std::string to_dot( const Dfa& d, std::string_view name, const SymbolNames& names = {} );

} // namespace declare::automata
