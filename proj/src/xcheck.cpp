#include <declare/ingest.hpp>
#include <declare/ltlf.hpp>
#include <declare/parallel.hpp>
#include <declare/seed.hpp>
#include <declare/tasks.hpp>
#include <declare/xcheck.hpp>

#include <json.hpp>

#include <optional>
#include <random>

namespace declare::xcheck
{

namespace
{

struct Subject
{
  Constraint constraint;
  ltlf::Formula formula;
  automata::Dfa dfa;
};

std::vector<Subject> subjects( std::span<const TemplateKind> kinds, const Options& options )
{
  const auto sigma = alphabet();
  std::vector<Subject> out;
  for ( auto kind : kinds )
  {
    const Constraint c{ out.size(), kind, sigma[0], sigma[1] };
    out.push_back( Subject{ c, ltlf::template_formula( kind, c.activation, c.target ),
                            options.automaton ? options.automaton( c ) : automata::constraint_dfa( c ) } );
  }
  return out;
}

void compare( const std::vector<Subject>& subjects, const Trace& trace, const Options& options,
              std::vector<Disagreement>& out )
{
  const direct::TraceIndex index( trace );
  for ( const auto& s : subjects )
  {
    Verdicts v{};
    v[static_cast<std::size_t>( Backend::Direct )] = direct::check_direct( s.constraint, index, options.direct ).sat;
    v[static_cast<std::size_t>( Backend::SyntaxTree )] = ltlf::eval_tree( s.formula, trace );
    v[static_cast<std::size_t>( Backend::Automaton )] = automata::run( s.dfa, trace );
    if ( v[0] != v[1] || v[1] != v[2] )
      out.push_back( Disagreement{ s.constraint.kind, trace, v } );
  }
}

CheckResult gather( std::vector<std::vector<Disagreement>>&& parts, std::uint64_t traces )
{
  CheckResult r{ traces, {} };
  for ( auto& p : parts )
    r.disagreements.insert( r.disagreements.end(), p.begin(), p.end() );
  return r;
}

} // namespace

std::array<Activity, 3> alphabet()
{
  return { Activity::intern( "a" ), Activity::intern( "b" ), Activity::intern( "c" ) };
}

CheckResult exhaustive_check( std::span<const TemplateKind> kinds, std::size_t max_len, const Options& options )
{
  const auto subs = subjects( kinds, options );
  const auto sigma = alphabet();

  // work items: every length, split by the first two symbols when there are two
  struct Item
  {
    std::size_t length;
    std::vector<Activity> prefix;
  };
  std::vector<Item> items;
  std::uint64_t traces = 0;
  for ( std::size_t len = 0; len <= max_len; ++len )
  {
    std::uint64_t n = 1;
    for ( std::size_t i = 0; i < len; ++i )
      n *= 3;
    traces += n;
    if ( len < 2 )
    {
      items.push_back( { len, {} } );
      continue;
    }
    for ( auto x : sigma )
      for ( auto y : sigma )
        items.push_back( { len, { x, y } } );
  }

  std::vector<std::vector<Disagreement>> parts( items.size() );
  parallel_for( items.size(), options.threads, [&]( std::size_t i ) {
    const auto& item = items[i];
    std::vector<Activity> events = item.prefix;
    events.resize( item.length, sigma[0] );
    std::vector<std::size_t> digits( item.length, 0 );
    // odometer over the positions after the prefix, last position fastest
    for ( ;; )
    {
      compare( subs, Trace( 0, events ), options, parts[i] );
      std::size_t pos = item.length;
      while ( pos > item.prefix.size() && digits[pos - 1] == 2 )
      {
        digits[pos - 1] = 0;
        events[pos - 1] = sigma[0];
        --pos;
      }
      if ( pos == item.prefix.size() )
        break;
      events[pos - 1] = sigma[++digits[pos - 1]];
    }
  } );
  return gather( std::move( parts ), traces );
}

CheckResult random_check( std::span<const TemplateKind> kinds, std::uint64_t n_samples, std::size_t max_len,
                          std::uint64_t seed, const Options& options )
{
  const auto subs = subjects( kinds, options );
  const auto sigma = alphabet();
  constexpr std::uint64_t chunk = 4096;
  const auto chunks = ( n_samples + chunk - 1 ) / chunk;
  std::vector<std::vector<Disagreement>> parts( chunks );
  parallel_for( chunks, options.threads, [&]( std::size_t c ) {
    for ( auto i = c * chunk; i < std::min( n_samples, ( c + 1 ) * chunk ); ++i )
    {
      std::mt19937_64 rng( stream_seed( seed, i ) );
      std::uniform_int_distribution<std::size_t> length( 0, max_len );
      std::uniform_int_distribution<std::size_t> symbol( 0, 2 );
      std::vector<Activity> events( length( rng ) );
      for ( auto& e : events )
        e = sigma[symbol( rng )];
      compare( subs, Trace( i, std::move( events ) ), options, parts[c] );
    }
  } );
  return gather( std::move( parts ), n_samples );
}

std::string replay_facts( const Disagreement& d )
{
  if ( d.trace.empty() )
    return "% empty trace\n";
  return ingest::write_factlog( EventLog( { Trace( 0, { d.trace.events().begin(), d.trace.events().end() } ) } ) );
}

std::string to_json( const CheckResult& r )
{
  nlohmann::ordered_json j;
  j["traces"] = r.traces;
  auto list = nlohmann::ordered_json::array();
  for ( const auto& d : r.disagreements )
  {
    auto trace = nlohmann::ordered_json::array();
    for ( auto a : d.trace.events() )
      trace.push_back( std::string( a.label() ) );
    nlohmann::ordered_json entry;
    entry["template"] = std::string( template_identifier( d.kind ) );
    entry["trace"] = trace;
    for ( auto b : all_backends() )
      entry[std::string( backend_name( b ) )] = d.verdicts[static_cast<std::size_t>( b )];
    entry["facts"] = replay_facts( d );
    list.push_back( entry );
  }
  j["disagreements"] = list;
  return j.dump( 2 ) + "\n";
}

} // namespace declare::xcheck
