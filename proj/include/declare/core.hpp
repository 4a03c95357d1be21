#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace declare
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error
{
public:
  using Error::Error;
};

/// Label reserved for the "any other activity" symbol class of constraint automata.
inline constexpr std::string_view wildcard_label = "*";

/*! \brief Interned activity label.
 *
 * Equality is identity of the interned id; ordering is lexicographic on the
 * label text, so sorted containers are stable across runs.
 */
class Activity
{
public:
  Activity() = default;

  /// Interns `label`. Throws InvalidArgument on an empty label.
  static Activity intern( std::string_view label );

  std::string_view label() const;
  std::uint32_t id() const noexcept { return id_; }
  bool valid() const noexcept { return id_ != invalid_id; }
  bool is_wildcard() const;

  friend bool operator==( Activity a, Activity b ) noexcept { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>( Activity a, Activity b );

private:
  static constexpr std::uint32_t invalid_id = 0xffffffffu;
  explicit Activity( std::uint32_t id ) : id_( id ) {}
  std::uint32_t id_ = invalid_id;
};

using TraceId = std::uint64_t;
using ConstraintId = std::uint64_t;

/// One process execution: a dense sequence of activities, one per position.
class Trace
{
public:
  Trace() = default;
  /// Throws InvalidArgument if an event is invalid or the wildcard label.
  Trace( TraceId id, std::vector<Activity> events );

  TraceId id() const noexcept { return id_; }
  std::span<const Activity> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  Activity operator[]( std::size_t pos ) const { return events_[pos]; }

  friend bool operator==( const Trace&, const Trace& ) = default;

private:
  TraceId id_ = 0;
  std::vector<Activity> events_;
};

/// Builds a trace from whitespace-free single-character labels, e.g. "abac".
Trace trace_from_chars( TraceId id, std::string_view chars );

/// Renders a trace as its labels joined by `sep`.
std::string trace_to_string( const Trace& trace, std::string_view sep = "" );

class EventLog
{
public:
  EventLog() = default;
  /// Throws InvalidArgument on duplicate trace ids.
  explicit EventLog( std::vector<Trace> traces );

  std::span<const Trace> traces() const noexcept { return traces_; }
  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }
  const Trace& operator[]( std::size_t i ) const { return traces_[i]; }

  /// Every activity occurring in at least one trace, sorted by label.
  std::span<const Activity> alphabet() const noexcept { return alphabet_; }
  std::size_t event_count() const noexcept;

  friend bool operator==( const EventLog& a, const EventLog& b ) { return a.traces_ == b.traces_; }

private:
  std::vector<Trace> traces_;
  std::vector<Activity> alphabet_;
};

std::vector<Activity> alphabet( const EventLog& log );

enum class TemplateKind : std::uint8_t
{
  Choice,
  ExclusiveChoice,
  RespondedExistence,
  Coexistence,
  Response,
  Precedence,
  AlternateResponse,
  AlternatePrecedence,
  ChainResponse,
  ChainPrecedence,
  Succession,
  AlternateSuccession,
  ChainSuccession,
};

inline constexpr std::size_t template_kind_count = 13;

std::span<const TemplateKind> all_template_kinds();

/// Label used in model files, e.g. "Alternate Precedence", "Co-Existence".
std::string_view template_label( TemplateKind kind );
/// Identifier form, e.g. "AlternatePrecedence".
std::string_view template_identifier( TemplateKind kind );
/// Accepts either the label or the identifier form.
std::optional<TemplateKind> parse_template_kind( std::string_view text );
/// Comma-separated identifiers of all kinds, for diagnostics.
std::string template_kind_list();

struct Constraint
{
  ConstraintId id = 0;
  TemplateKind kind = TemplateKind::Response;
  Activity activation;
  Activity target;

  friend bool operator==( const Constraint&, const Constraint& ) = default;
};

std::string to_string( const Constraint& c );

/// A set of constraints, kept sorted by id.
class DeclareModel
{
public:
  DeclareModel() = default;
  /// Throws InvalidArgument on duplicate ids or unbound activities.
  explicit DeclareModel( std::vector<Constraint> constraints );

  std::span<const Constraint> constraints() const noexcept { return constraints_; }
  std::size_t size() const noexcept { return constraints_.size(); }
  bool empty() const noexcept { return constraints_.empty(); }

  friend bool operator==( const DeclareModel&, const DeclareModel& ) = default;

private:
  std::vector<Constraint> constraints_;
};

} // namespace declare

template <>
struct std::hash<declare::Activity>
{
  std::size_t operator()( declare::Activity a ) const noexcept { return std::hash<std::uint32_t>{}( a.id() ); }
};
