#include <declare/parallel.hpp>
#include <declare/tasks.hpp>

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

namespace declare
{

namespace
{

constexpr std::array<Backend, 3> backends{ Backend::Direct, Backend::SyntaxTree, Backend::Automaton };

} // namespace

std::string_view backend_name( Backend b )
{
  switch ( b )
  {
  case Backend::Direct: return "direct";
  case Backend::SyntaxTree: return "tree";
  case Backend::Automaton: return "dfa";
  }
  return "?";
}

std::optional<Backend> parse_backend( std::string_view name )
{
  for ( auto b : backends )
    if ( backend_name( b ) == name )
      return b;
  return std::nullopt;
}

std::span<const Backend> all_backends()
{
  return backends;
}

PreparedConstraint::PreparedConstraint( const Constraint& c, Backend backend, const direct::DirectOptions& options )
    : constraint_( c ), backend_( backend ), options_( options )
{
  switch ( backend )
  {
  case Backend::Direct: break;
  case Backend::SyntaxTree: formula_ = ltlf::template_formula( c.kind, c.activation, c.target ); break;
  case Backend::Automaton: dfa_ = automata::constraint_dfa( c ); break;
  }
}

bool PreparedConstraint::check( const Trace& trace, const direct::TraceIndex* index ) const
{
  switch ( backend_ )
  {
  case Backend::Direct:
    if ( index )
      return direct::holds_direct( constraint_, *index, options_ );
    return direct::holds_direct( constraint_, direct::TraceIndex( trace ), options_ );
  case Backend::SyntaxTree: return ltlf::eval_tree( *formula_, trace );
  case Backend::Automaton: return automata::run( *dfa_, trace );
  }
  return false;
}

bool CheckReport::is_sat( TraceId trace, ConstraintId constraint ) const
{
  const auto row = std::find( trace_ids.begin(), trace_ids.end(), trace );
  const auto col = std::find( constraint_ids.begin(), constraint_ids.end(), constraint );
  if ( row == trace_ids.end() || col == constraint_ids.end() )
    throw InvalidArgument( "unknown trace or constraint id" );
  return at( static_cast<std::size_t>( row - trace_ids.begin() ), static_cast<std::size_t>( col - constraint_ids.begin() ) );
}

CheckReport conformance_check( const EventLog& log, const DeclareModel& model, Backend backend, const RunOptions& options )
{
  std::vector<PreparedConstraint> prepared;
  prepared.reserve( model.size() );
  for ( const auto& c : model.constraints() )
    prepared.emplace_back( c, backend, options.direct );

  CheckReport report;
  const auto cols = model.size();
  for ( const auto& t : log.traces() )
    report.trace_ids.push_back( t.id() );
  for ( const auto& c : model.constraints() )
    report.constraint_ids.push_back( c.id );
  report.sat.assign( log.size() * cols, 0 );

  std::vector<Activity> focus;
  for ( const auto& c : model.constraints() )
    focus.insert( focus.end(), { c.activation, c.target } );
  std::sort( focus.begin(), focus.end(), []( Activity x, Activity y ) { return x.id() < y.id(); } );
  focus.erase( std::unique( focus.begin(), focus.end() ), focus.end() );

  // rows are processed in blocks so that one index serves a whole block;
  // each row is written by exactly one worker
  constexpr std::size_t block = 64;
  parallel_for( ( log.size() + block - 1 ) / block, options.threads, [&]( std::size_t b ) {
    std::optional<direct::TraceIndex> index;
    for ( auto row = b * block; row < std::min( log.size(), ( b + 1 ) * block ); ++row )
    {
      const auto& trace = log[row];
      if ( backend == Backend::Direct )
      {
        if ( index )
          index->assign( trace, focus );
        else
          index.emplace( trace, focus );
      }
      for ( std::size_t col = 0; col < cols; ++col )
        report.sat[row * cols + col] = prepared[col].check( trace, index ? &*index : nullptr ) ? 1 : 0;
    }
  } );

  std::vector<std::int64_t> satisfied( cols, 0 );
  for ( std::size_t row = 0; row < log.size(); ++row )
  {
    bool all = true;
    for ( std::size_t col = 0; col < cols; ++col )
    {
      const bool s = report.at( row, col );
      all = all && s;
      satisfied[col] += s ? 1 : 0;
    }
    if ( all )
      report.compliant.push_back( report.trace_ids[row] );
  }
  if ( !log.empty() )
    for ( std::size_t col = 0; col < cols; ++col )
      report.support.emplace( report.constraint_ids[col],
                              Rational( satisfied[col], static_cast<std::int64_t>( log.size() ) ) );
  return report;
}

Rational support( const Constraint& c, const EventLog& log, Backend backend, const RunOptions& options )
{
  if ( log.empty() )
    throw InvalidArgument( "support is undefined on an empty log" );
  auto report = conformance_check( log, DeclareModel( { c } ), backend, options );
  return report.support.at( c.id );
}

std::vector<std::string> Query::variables() const
{
  std::set<std::string> names;
  for ( const auto& qc : constraints )
    for ( const Slot* slot : { &qc.activation, &qc.target } )
      if ( const auto* v = std::get_if<Variable>( slot ) )
        names.insert( v->name );
  return { names.begin(), names.end() };
}

std::size_t max_violations( Rational threshold, std::size_t traces )
{
  const Rational slack = ( Rational( 1 ) - threshold ) * Rational( static_cast<std::int64_t>( traces ) );
  return static_cast<std::size_t>( slack.numerator() / slack.denominator() );
}

std::vector<QueryAnswer> query_check( const Query& q, const EventLog& log, Rational threshold, Backend backend,
                                      const QueryOptions& options )
{
  if ( threshold <= Rational( 0 ) || threshold > Rational( 1 ) )
    throw InvalidArgument( "support threshold must lie in (0, 1], got " + to_string( threshold ) );
  if ( log.empty() )
    throw InvalidArgument( "query checking needs a non-empty log" );

  const auto vars = q.variables();
  std::vector<std::vector<Activity>> domains;
  for ( const auto& v : vars )
  {
    auto it = q.domains.find( v );
    auto dom = it != q.domains.end() ? it->second : alphabet( log );
    std::sort( dom.begin(), dom.end() );
    dom.erase( std::unique( dom.begin(), dom.end() ), dom.end() );
    if ( dom.empty() )
      throw InvalidArgument( "variable " + v + " has an empty domain" );
    domains.push_back( std::move( dom ) );
  }

  std::size_t combinations = 1;
  for ( const auto& d : domains )
    combinations *= d.size();

  std::vector<direct::TraceIndex> indexes;
  if ( backend == Backend::Direct )
  {
    indexes.reserve( log.size() );
    for ( const auto& t : log.traces() )
      indexes.emplace_back( t );
  }

  std::mutex cache_mutex;
  std::map<std::tuple<TemplateKind, Activity, Activity>, std::shared_ptr<const PreparedConstraint>> cache;
  const auto prepare = [&]( TemplateKind kind, Activity act, Activity tgt ) {
    const auto key = std::make_tuple( kind, act, tgt );
    {
      std::lock_guard lock( cache_mutex );
      if ( auto it = cache.find( key ); it != cache.end() )
        return it->second;
    }
    auto p = std::make_shared<const PreparedConstraint>( Constraint{ 0, kind, act, tgt }, backend, options.direct );
    std::lock_guard lock( cache_mutex );
    return cache.emplace( key, std::move( p ) ).first->second;
  };

  const auto limit = max_violations( threshold, log.size() );
  const auto total = static_cast<std::int64_t>( log.size() );
  std::vector<std::optional<QueryAnswer>> results( combinations );

  parallel_for( combinations, options.threads, [&]( std::size_t combo ) {
    // mixed-radix decode, last variable varying fastest
    std::vector<Activity> values( vars.size() );
    auto rest = combo;
    for ( std::size_t i = vars.size(); i-- > 0; )
    {
      values[i] = domains[i][rest % domains[i].size()];
      rest /= domains[i].size();
    }
    const auto resolve = [&]( const Slot& slot ) {
      if ( const auto* a = std::get_if<Activity>( &slot ) )
        return *a;
      const auto& name = std::get<Variable>( slot ).name;
      return values[static_cast<std::size_t>( std::lower_bound( vars.begin(), vars.end(), name ) - vars.begin() )];
    };

    std::vector<std::shared_ptr<const PreparedConstraint>> instance;
    for ( const auto& qc : q.constraints )
      instance.push_back( prepare( qc.kind, resolve( qc.activation ), resolve( qc.target ) ) );

    std::size_t violations = 0;
    for ( std::size_t row = 0; row < log.size(); ++row )
    {
      const bool ok = std::all_of( instance.begin(), instance.end(),
                                   [&]( const auto& p ) { return p->check( log[row], indexes.empty() ? nullptr : &indexes[row] ); } );
      if ( !ok && ++violations > limit && options.early_abort )
        return;
    }
    const Rational s( total - static_cast<std::int64_t>( violations ), total );
    if ( s < threshold )
      return;
    QueryAnswer answer{ {}, s };
    for ( std::size_t i = 0; i < vars.size(); ++i )
      answer.binding.emplace_back( vars[i], values[i] );
    results[combo] = std::move( answer );
  } );

  std::vector<QueryAnswer> answers;
  for ( auto& r : results )
    if ( r )
      answers.push_back( std::move( *r ) );
  std::stable_sort( answers.begin(), answers.end(), []( const QueryAnswer& a, const QueryAnswer& b ) {
    if ( a.support != b.support )
      return a.support > b.support;
    return a.binding < b.binding;
  } );
  return answers;
}

} // namespace declare
