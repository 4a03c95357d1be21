#pragma once

// Reader for the small fact language shared by log, model and query documents:
// clauses `name(arg, ...).` or `head :- body, ... .`, with `%` line comments.

#include <declare/ingest.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace declare::ingest::detail
{

struct Term
{
  enum class Kind
  {
    Integer,
    Constant, // lowercase identifier
    Variable, // uppercase or underscore identifier
    String,   // double-quoted
    Compound,
  };

  Kind kind = Kind::Constant;
  std::string text; // name of a compound, label otherwise
  std::uint64_t value = 0;
  std::vector<Term> args;

  bool is( std::string_view name, std::size_t arity ) const
  {
    return kind == Kind::Compound && text == name && args.size() == arity;
  }
  /// Identifier or string label; integers render as digits.
  bool is_label() const { return kind == Kind::Constant || kind == Kind::String || kind == Kind::Integer; }
};

struct Clause
{
  Term head;
  std::vector<Term> body;
  std::size_t line = 0;
};

/// Throws ParseError with the line of the offending token.
std::vector<Clause> read_clauses( std::string_view text );

/// Activity from a constant or string term; rejects variables and the wildcard label.
Activity activity_of( const Term& t, std::size_t line );

std::string describe( const Term& t );

/// Unquoted when the label is a lowercase identifier, quoted with escapes otherwise.
std::string format_label( std::string_view label );

} // namespace declare::ingest::detail
