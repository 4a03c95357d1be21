#include <declare/core.hpp>

#include <algorithm>
#include <array>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

namespace declare
{

namespace
{

class Interner
{
public:
  std::uint32_t intern( std::string_view label )
  {
    {
      std::shared_lock lock( mutex_ );
      if ( auto it = ids_.find( label ); it != ids_.end() )
        return it->second;
    }
    std::unique_lock lock( mutex_ );
    if ( auto it = ids_.find( label ); it != ids_.end() )
      return it->second;
    const auto id = static_cast<std::uint32_t>( labels_.size() );
    labels_.emplace_back( label );
    ids_.emplace( labels_.back(), id );
    return id;
  }

  std::string_view label( std::uint32_t id ) const
  {
    std::shared_lock lock( mutex_ );
    return labels_.at( id );
  }

private:
  mutable std::shared_mutex mutex_;
  // deque keeps element addresses stable, so the string_view keys stay valid
  std::deque<std::string> labels_;
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

Interner& interner()
{
  static Interner instance;
  return instance;
}

struct KindInfo
{
  TemplateKind kind;
  std::string_view label;
  std::string_view identifier;
};

constexpr std::array<KindInfo, template_kind_count> kind_table{ {
    { TemplateKind::Choice, "Choice", "Choice" },
    { TemplateKind::ExclusiveChoice, "Exclusive Choice", "ExclusiveChoice" },
    { TemplateKind::RespondedExistence, "Responded Existence", "RespondedExistence" },
    { TemplateKind::Coexistence, "Co-Existence", "Coexistence" },
    { TemplateKind::Response, "Response", "Response" },
    { TemplateKind::Precedence, "Precedence", "Precedence" },
    { TemplateKind::AlternateResponse, "Alternate Response", "AlternateResponse" },
    { TemplateKind::AlternatePrecedence, "Alternate Precedence", "AlternatePrecedence" },
    { TemplateKind::ChainResponse, "Chain Response", "ChainResponse" },
    { TemplateKind::ChainPrecedence, "Chain Precedence", "ChainPrecedence" },
    { TemplateKind::Succession, "Succession", "Succession" },
    { TemplateKind::AlternateSuccession, "Alternate Succession", "AlternateSuccession" },
    { TemplateKind::ChainSuccession, "Chain Succession", "ChainSuccession" },
} };

constexpr std::array<TemplateKind, template_kind_count> kinds = [] {
  std::array<TemplateKind, template_kind_count> out{};
  for ( std::size_t i = 0; i < template_kind_count; ++i )
    out[i] = kind_table[i].kind;
  return out;
}();

const KindInfo& info( TemplateKind kind )
{
  return kind_table.at( static_cast<std::size_t>( kind ) );
}

} // namespace

Activity Activity::intern( std::string_view label )
{
  if ( label.empty() )
    throw InvalidArgument( "activity label must be non-empty" );
  return Activity( interner().intern( label ) );
}

std::string_view Activity::label() const
{
  if ( !valid() )
    return {};
  return interner().label( id_ );
}

bool Activity::is_wildcard() const
{
  return valid() && label() == wildcard_label;
}

std::strong_ordering operator<=>( Activity a, Activity b )
{
  if ( a.id_ == b.id_ )
    return std::strong_ordering::equal;
  return a.label().compare( b.label() ) <=> 0;
}

Trace::Trace( TraceId id, std::vector<Activity> events )
    : id_( id ), events_( std::move( events ) )
{
  for ( std::size_t pos = 0; pos < events_.size(); ++pos )
  {
    if ( !events_[pos].valid() )
      throw InvalidArgument( "trace " + std::to_string( id ) + ": invalid activity at position " + std::to_string( pos ) );
    if ( events_[pos].is_wildcard() )
      throw InvalidArgument( "trace " + std::to_string( id ) + ": reserved label \"*\" at position " + std::to_string( pos ) );
  }
}

Trace trace_from_chars( TraceId id, std::string_view chars )
{
  std::vector<Activity> events;
  events.reserve( chars.size() );
  for ( char c : chars )
    events.push_back( Activity::intern( std::string_view( &c, 1 ) ) );
  return Trace( id, std::move( events ) );
}

std::string trace_to_string( const Trace& trace, std::string_view sep )
{
  std::string out;
  for ( std::size_t i = 0; i < trace.size(); ++i )
  {
    if ( i > 0 )
      out += sep;
    out += trace[i].label();
  }
  return out;
}

EventLog::EventLog( std::vector<Trace> traces ) : traces_( std::move( traces ) )
{
  std::unordered_set<TraceId> ids;
  std::unordered_set<Activity> seen;
  for ( const auto& t : traces_ )
  {
    if ( !ids.insert( t.id() ).second )
      throw InvalidArgument( "duplicate trace id " + std::to_string( t.id() ) );
    seen.insert( t.events().begin(), t.events().end() );
  }
  alphabet_.assign( seen.begin(), seen.end() );
  std::sort( alphabet_.begin(), alphabet_.end() );
}

std::size_t EventLog::event_count() const noexcept
{
  std::size_t n = 0;
  for ( const auto& t : traces_ )
    n += t.size();
  return n;
}

std::vector<Activity> alphabet( const EventLog& log )
{
  return { log.alphabet().begin(), log.alphabet().end() };
}

std::span<const TemplateKind> all_template_kinds()
{
  return kinds;
}

std::string_view template_label( TemplateKind kind )
{
  return info( kind ).label;
}

std::string_view template_identifier( TemplateKind kind )
{
  return info( kind ).identifier;
}

std::optional<TemplateKind> parse_template_kind( std::string_view text )
{
  for ( const auto& k : kind_table )
    if ( text == k.label || text == k.identifier )
      return k.kind;
  return std::nullopt;
}

std::string template_kind_list()
{
  std::string out;
  for ( const auto& k : kind_table )
  {
    if ( !out.empty() )
      out += ", ";
    out += k.identifier;
  }
  return out;
}

std::string to_string( const Constraint& c )
{
  std::string out( template_identifier( c.kind ) );
  out += '(';
  out += c.activation.label();
  out += ',';
  out += c.target.label();
  out += ')';
  return out;
}

DeclareModel::DeclareModel( std::vector<Constraint> constraints ) : constraints_( std::move( constraints ) )
{
  std::sort( constraints_.begin(), constraints_.end(),
             []( const Constraint& a, const Constraint& b ) { return a.id < b.id; } );
  for ( std::size_t i = 0; i < constraints_.size(); ++i )
  {
    const auto& c = constraints_[i];
    if ( i > 0 && constraints_[i - 1].id == c.id )
      throw InvalidArgument( "duplicate constraint id " + std::to_string( c.id ) );
    if ( !c.activation.valid() || !c.target.valid() )
      throw InvalidArgument( "constraint " + std::to_string( c.id ) + " has an unbound argument" );
  }
}

} // namespace declare
