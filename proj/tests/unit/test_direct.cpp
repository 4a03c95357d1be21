#include <declare/direct.hpp>
#include <declare/ltlf.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace declare;
using namespace declare::direct;

namespace
{

const Activity a = Activity::intern( "a" );
const Activity b = Activity::intern( "b" );
const Activity c = Activity::intern( "c" );

Constraint make( TemplateKind kind, Activity act = a, Activity tgt = b )
{
  return Constraint{ 0, kind, act, tgt };
}

bool sat( TemplateKind kind, const Trace& t )
{
  return check_direct( make( kind ), t ).sat;
}

bool sat( TemplateKind kind, std::string_view chars )
{
  return sat( kind, trace_from_chars( 0, chars ) );
}

} // namespace

TEST_CASE( "response witnesses" )
{
  const auto v = check_direct( make( TemplateKind::Response ), trace_from_chars( 0, "abacb" ) );
  CHECK( v.sat );
  CHECK( v.failures.empty() );
  CHECK( v.witnesses == std::map<std::uint32_t, std::uint32_t>{ { 0, 1 }, { 2, 4 } } );
}

TEST_CASE( "alternate and chain response on the worked traces" )
{
  const auto alt = check_direct( make( TemplateKind::AlternateResponse ), trace_from_chars( 0, "aaabc" ) );
  REQUIRE_FALSE( alt.sat );
  CHECK( alt.failures.front().position == 0u );
  CHECK( alt.failures.front().reason == Reason::NoTargetBeforeNextActivation );
  CHECK( sat( TemplateKind::AlternateResponse, "abacb" ) );
  CHECK( sat( TemplateKind::AlternateResponse, "abab" ) );
  CHECK( sat( TemplateKind::ChainResponse, "abab" ) );
  CHECK_FALSE( sat( TemplateKind::ChainResponse, "abacb" ) );
  CHECK_FALSE( sat( TemplateKind::ChainResponse, "aaabc" ) );
}

TEST_CASE( "customer service response" )
{
  const auto complains = Activity::intern( "customer_complains" );
  const auto logging = Activity::intern( "logging_complain" );
  const auto address = Activity::intern( "address_complain" );
  const auto feedback = Activity::intern( "feedback_collection" );
  const auto c = make( TemplateKind::Response, complains, address );
  CHECK( check_direct( c, Trace( 0, { complains, logging, address, feedback } ) ).sat );
  const auto v = check_direct( c, Trace( 0, { complains, logging, address, complains, feedback } ) );
  REQUIRE_FALSE( v.sat );
  REQUIRE( v.failures.size() == 1 );
  CHECK( v.failures[0].position == 3u );
  CHECK( v.failures[0].reason == Reason::NoLaterTarget );
}

TEST_CASE( "choice templates" )
{
  CHECK_FALSE( sat( TemplateKind::ExclusiveChoice, "ab" ) );
  CHECK( sat( TemplateKind::ExclusiveChoice, "accc" ) );
  CHECK_FALSE( sat( TemplateKind::ExclusiveChoice, "ccc" ) );
  CHECK_FALSE( sat( TemplateKind::Choice, "" ) );
  CHECK_FALSE( sat( TemplateKind::ExclusiveChoice, "" ) );
  CHECK( sat( TemplateKind::Choice, "cb" ) );
}

TEST_CASE( "precedence family" )
{
  CHECK( sat( TemplateKind::Precedence, "cab" ) );
  CHECK_FALSE( sat( TemplateKind::Precedence, "bab" ) );
  CHECK_FALSE( sat( TemplateKind::Precedence, "cb" ) );
  CHECK( sat( TemplateKind::AlternatePrecedence, "abab" ) );
  CHECK_FALSE( sat( TemplateKind::AlternatePrecedence, "abb" ) );
  CHECK( sat( TemplateKind::ChainPrecedence, "cab" ) );
  CHECK_FALSE( sat( TemplateKind::ChainPrecedence, "acb" ) );
  CHECK_FALSE( sat( TemplateKind::ChainPrecedence, "b" ) );
  const auto v = check_direct( make( TemplateKind::ChainSuccession ), trace_from_chars( 0, "bab" ) );
  CHECK_FALSE( v.sat );
  CHECK( v.failures.front().reason != Reason::NoImmediateTarget );
}

TEST_CASE( "response is strict when activation equals target" )
{
  const auto self = make( TemplateKind::Response, a, a );
  CHECK_FALSE( check_direct( self, trace_from_chars( 0, "aa" ) ).sat );
  CHECK( check_direct( self, trace_from_chars( 0, "bc" ) ).sat );
  CHECK( check_direct( self, Trace() ).sat );
}

TEST_CASE( "alternate succession last-target rule is opt-in" )
{
  const auto c = make( TemplateKind::AlternateSuccession );
  const auto t = trace_from_chars( 0, "ab" );
  CHECK( check_direct( c, t ).sat );
  CHECK( ltlf::eval_tree( ltlf::template_formula( c.kind, a, b ), t ) );
  const auto v = check_direct( c, t, DirectOptions{ true } );
  CHECK_FALSE( v.sat );
  CHECK( v.failures.back().reason == Reason::TargetAtEnd );
}

TEST_CASE( "empty trace follows ev_empty" )
{
  for ( auto kind : all_template_kinds() )
  {
    CAPTURE( template_identifier( kind ) );
    CHECK( sat( kind, Trace() ) == ltlf::ev_empty( ltlf::template_formula( kind, a, b ) ) );
  }
}

TEST_CASE( "direct agrees with the formula on all traces up to length 10" )
{
  const std::vector<Activity> sigma{ a, b, c };
  for ( auto kind : all_template_kinds() )
  {
    CAPTURE( template_identifier( kind ) );
    const auto f = ltlf::template_formula( kind, a, b );
    std::size_t bad = 0;
    oracle::for_each_trace( sigma, 10, [&]( const Trace& t ) {
      const auto v = check_direct( make( kind ), t );
      bad += v.sat != ltlf::eval_tree( f, t ) ? 1 : 0;
      bad += v.sat != v.failures.empty() ? 1 : 0;
    } );
    CHECK( bad == 0 );
  }
}

TEST_CASE( "direct agrees with the formula on long random traces" )
{
  std::mt19937_64 rng( 17 );
  const std::vector<Activity> sigma{ a, b, c, Activity::intern( "d" ) };
  for ( auto kind : all_template_kinds() )
  {
    CAPTURE( template_identifier( kind ) );
    const auto f = ltlf::template_formula( kind, a, b );
    std::size_t bad = 0;
    for ( int i = 0; i < 10000; ++i )
    {
      const auto t = oracle::random_trace( rng, sigma, 80 );
      bad += check_direct( make( kind ), t ).sat != ltlf::eval_tree( f, t ) ? 1 : 0;
    }
    CHECK( bad == 0 );
  }
}

TEST_CASE( "subsumption hierarchy" )
{
  std::mt19937_64 rng( 23 );
  const std::vector<Activity> sigma{ a, b, c };
  for ( int i = 0; i < 20000; ++i )
  {
    const auto t = oracle::random_trace( rng, sigma, 30 );
    const auto s = [&]( TemplateKind k ) { return sat( k, t ); };
    CHECK( ( !s( TemplateKind::ChainResponse ) || s( TemplateKind::AlternateResponse ) ) );
    CHECK( ( !s( TemplateKind::AlternateResponse ) || s( TemplateKind::Response ) ) );
    CHECK( ( !s( TemplateKind::Response ) || s( TemplateKind::RespondedExistence ) ) );
    CHECK( ( !s( TemplateKind::ChainPrecedence ) || s( TemplateKind::AlternatePrecedence ) ) );
    CHECK( ( !s( TemplateKind::AlternatePrecedence ) || s( TemplateKind::Precedence ) ) );
    CHECK( s( TemplateKind::Succession ) == ( s( TemplateKind::Response ) && s( TemplateKind::Precedence ) ) );
    CHECK( s( TemplateKind::AlternateSuccession ) ==
           ( s( TemplateKind::AlternateResponse ) && s( TemplateKind::AlternatePrecedence ) ) );
    CHECK( s( TemplateKind::ChainSuccession ) ==
           ( s( TemplateKind::ChainResponse ) && s( TemplateKind::ChainPrecedence ) ) );
    CHECK( s( TemplateKind::Coexistence ) ==
           ( s( TemplateKind::RespondedExistence ) && check_direct( make( TemplateKind::RespondedExistence, b, a ), t ).sat ) );
  }
}

TEST_CASE( "at most one witness per obligation and linear work" )
{
  std::mt19937_64 rng( 31 );
  const std::vector<Activity> sigma{ a, b, c };
  for ( int i = 0; i < 3000; ++i )
  {
    const auto t = oracle::random_trace( rng, sigma, 200 );
    const TraceIndex index( t );
    const auto occurrences = index.positions( a ).size() + index.positions( b ).size();
    for ( auto kind : all_template_kinds() )
    {
      DirectStats stats;
      const auto v = check_direct( make( kind ), index, {}, &stats );
      CHECK( v.witnesses.size() <= occurrences );
      for ( const auto& [obliged, by] : v.witnesses )
        CHECK( ( t[obliged] == a || t[obliged] == b ) );
      CHECK( stats.steps <= 2 * ( t.size() + occurrences ) );
    }
  }
}

TEST_CASE( "trace index" )
{
  const auto t = trace_from_chars( 0, "abcab" );
  const TraceIndex index( t );
  const auto pos = index.positions( a );
  CHECK( std::vector<std::uint32_t>( pos.begin(), pos.end() ) == std::vector<std::uint32_t>{ 0, 3 } );
  CHECK_FALSE( index.occurs( Activity::intern( "zz" ) ) );
  CHECK( index.occurs( c ) );
}

TEST_CASE( "focused trace index" )
{
  std::mt19937_64 rng( 19 );
  const auto sigma = oracle::labels( { "a", "b", "c", "d", "e" } );
  for ( int round = 0; round < 2000; ++round )
  {
    const auto t = oracle::random_trace( rng, sigma, 30 );
    std::vector<Activity> focus{ sigma[rng() % 5], sigma[rng() % 5], Activity::intern( "never" ) };
    std::sort( focus.begin(), focus.end(), []( Activity x, Activity y ) { return x.id() < y.id(); } );
    focus.erase( std::unique( focus.begin(), focus.end() ), focus.end() );
    const TraceIndex full( t );
    const TraceIndex part( t, focus );
    for ( auto x : sigma )
    {
      const auto expected = std::find( focus.begin(), focus.end(), x ) != focus.end() ? full.positions( x )
                                                                                       : std::span<const std::uint32_t>{};
      const auto got = part.positions( x );
      CHECK( std::vector<std::uint32_t>( got.begin(), got.end() ) ==
             std::vector<std::uint32_t>( expected.begin(), expected.end() ) );
    }
    for ( auto kind : all_template_kinds() )
    {
      const Constraint c{ 0, kind, focus.front(), focus.back() };
      CHECK( holds_direct( c, part ) == check_direct( c, full ).sat );
    }
  }
}
