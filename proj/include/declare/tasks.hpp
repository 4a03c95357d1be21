#pragma once

#include <declare/automata.hpp>
#include <declare/core.hpp>
#include <declare/direct.hpp>
#include <declare/ltlf.hpp>
#include <declare/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace declare
{

enum class Backend : std::uint8_t
{
  Direct,
  SyntaxTree,
  Automaton,
};

/// "direct", "tree", "dfa".
std::string_view backend_name( Backend b );
std::optional<Backend> parse_backend( std::string_view name );
std::span<const Backend> all_backends();

/// A constraint with whatever its backend needs precomputed (formula or automaton).
class PreparedConstraint
{
public:
  PreparedConstraint( const Constraint& c, Backend backend, const direct::DirectOptions& options = {} );

  const Constraint& constraint() const noexcept { return constraint_; }
  Backend backend() const noexcept { return backend_; }
  /// `index`, when given, must describe `trace`; only the direct backend uses it.
  bool check( const Trace& trace, const direct::TraceIndex* index = nullptr ) const;

private:
  Constraint constraint_;
  Backend backend_;
  direct::DirectOptions options_;
  std::optional<ltlf::Formula> formula_;
  std::optional<automata::Dfa> dfa_;
};

struct RunOptions
{
  unsigned threads = 0;
  direct::DirectOptions direct;
};

struct CheckReport
{
  std::vector<TraceId> trace_ids;
  std::vector<ConstraintId> constraint_ids;
  /// Row-major: sat[row * constraint_ids.size() + col].
  std::vector<std::uint8_t> sat;
  std::vector<TraceId> compliant;
  /// Undefined (empty) for an empty log.
  std::map<ConstraintId, Rational> support;

  bool at( std::size_t row, std::size_t col ) const { return sat[row * constraint_ids.size() + col] != 0; }
  /// Lookup by ids; throws InvalidArgument for unknown ids.
  bool is_sat( TraceId trace, ConstraintId constraint ) const;
};

CheckReport conformance_check( const EventLog& log, const DeclareModel& model, Backend backend,
                               const RunOptions& options = {} );

/// Fraction of traces satisfying `c`. Throws InvalidArgument on an empty log.
Rational support( const Constraint& c, const EventLog& log, Backend backend, const RunOptions& options = {} );

struct Variable
{
  std::string name;
  friend auto operator<=>( const Variable&, const Variable& ) = default;
};

using Slot = std::variant<Activity, Variable>;

struct QueryConstraint
{
  TemplateKind kind;
  Slot activation;
  Slot target;
};

struct Query
{
  std::vector<QueryConstraint> constraints;
  /// Variables without an entry range over the log alphabet.
  std::map<std::string, std::vector<Activity>> domains;

  /// Variable names in sorted order.
  std::vector<std::string> variables() const;
};

struct QueryAnswer
{
  /// Sorted by variable name.
  std::vector<std::pair<std::string, Activity>> binding;
  Rational support;

  friend bool operator==( const QueryAnswer&, const QueryAnswer& ) = default;
};

struct QueryOptions : RunOptions
{
  /// Stop scoring a binding once its violations exceed floor((1 - s) * |L|).
  bool early_abort = true;
};

/*! \brief Bindings whose instantiated constraints are jointly satisfied by at least `threshold` of the log.
 *
 * Results are sorted by support (descending), then binding labels. Throws
 * InvalidArgument for a threshold outside (0, 1], an empty log, or a
 * variable with an empty domain.
 */
std::vector<QueryAnswer> query_check( const Query& q, const EventLog& log, Rational threshold, Backend backend,
                                      const QueryOptions& options = {} );

/// floor((1 - s) * n).
std::size_t max_violations( Rational threshold, std::size_t traces );

} // namespace declare
