#include <declare/automata.hpp>

#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <map>
#include <random>
#include <set>
#include <tuple>

using namespace declare;
using namespace declare::automata;

namespace
{

const Activity a = Activity::intern( "a" );
const Activity b = Activity::intern( "b" );
const Activity c = Activity::intern( "c" );

/// Number of Myhill-Nerode classes visible through prefixes and suffixes of bounded length,
/// computed from the formula semantics alone.
std::size_t truncated_nerode_classes( const ltlf::Formula& f, const std::vector<Activity>& sigma, std::size_t prefix_len,
                                      std::size_t suffix_len )
{
  std::vector<std::vector<Activity>> suffixes;
  oracle::for_each_trace( sigma, suffix_len, [&]( const Trace& t ) {
    suffixes.emplace_back( t.events().begin(), t.events().end() );
  } );
  std::set<std::vector<bool>> classes;
  oracle::for_each_trace( sigma, prefix_len, [&]( const Trace& p ) {
    std::vector<bool> row;
    for ( const auto& s : suffixes )
    {
      std::vector<Activity> w( p.events().begin(), p.events().end() );
      w.insert( w.end(), s.begin(), s.end() );
      row.push_back( oracle::holds( f, Trace( 0, w ) ) );
    }
    classes.insert( row );
  } );
  return classes.size();
}

} // namespace

TEST_CASE( "Response compiles to the two-state automaton with six transitions" )
{
  const auto d = constraint_dfa( TemplateKind::Response, a, b );
  REQUIRE( d.state_count() == 2 );
  CHECK( d.initial() == 0 );

  const auto j = nlohmann::json::parse( to_facts_json( d, "Response", argument_names( a, b ) ) );
  CHECK( j["kind"] == "Response" );
  CHECK( j["initial"] == 0 );
  CHECK( j["accepting"] == nlohmann::json::array( { 0 } ) );
  std::set<std::tuple<int, std::string, int>> got;
  for ( const auto& t : j["transitions"] )
    got.emplace( t[0].get<int>(), t[1].get<std::string>(), t[2].get<int>() );
  const std::set<std::tuple<int, std::string, int>> expected{
      { 0, "*", 0 }, { 0, "arg_1", 0 }, { 0, "arg_0", 1 }, { 1, "arg_1", 0 }, { 1, "*", 1 }, { 1, "arg_0", 1 },
  };
  CHECK( got == expected );

  const auto facts = to_facts( d, "Response", argument_names( a, b ) );
  for ( const auto* line : { "template(\"Response\",0,\"*\",0).", "template(\"Response\",0,arg_1,0).",
                             "template(\"Response\",0,arg_0,1).", "template(\"Response\",1,arg_1,0).",
                             "template(\"Response\",1,\"*\",1).", "template(\"Response\",1,arg_0,1).",
                             "accepting(\"Response\",0).", "initial(\"Response\",0)." } )
    CHECK( facts.find( line ) != std::string::npos );
}

TEST_CASE( "export is deterministic" )
{
  const auto d1 = constraint_dfa( TemplateKind::AlternateSuccession, a, b );
  const auto d2 = constraint_dfa( TemplateKind::AlternateSuccession, a, b );
  CHECK( to_facts_json( d1, "x", argument_names( a, b ) ) == to_facts_json( d2, "x", argument_names( a, b ) ) );
  const auto dot = to_dot( d1, "AlternateSuccession", argument_names( a, b ) );
  CHECK( dot.starts_with( "digraph" ) );
  CHECK( dot.find( "doublecircle" ) != std::string::npos );
}

TEST_CASE( "tautology compiles to a single accepting state" )
{
  const auto d = compile( ltlf::Formula::top() );
  CHECK( d.state_count() == 1 );
  CHECK( d.accepting( 0 ) );
  CHECK( d.symbol_count() == 1 );
  CHECK( d.next( 0, d.other_symbol() ) == 0 );
  const auto never = minimize( compile( ltlf::Formula::bottom() ) );
  CHECK( never.state_count() == 1 );
  CHECK_FALSE( never.accepting( 0 ) );
}

TEST_CASE( "run maps unnamed activities to the wildcard class" )
{
  const auto d = constraint_dfa( TemplateKind::Response, a, b );
  const std::vector<Activity> events{ a, b, Activity::intern( "w" ), Activity::intern( "q" ), Activity::intern( "w" ) };
  CHECK( run( d, Trace( 0, events ) ) );
  CHECK( run( d, trace_from_chars( 0, "aaabc" ) ) );
  CHECK_FALSE( run( d, trace_from_chars( 0, "aaaba" ) ) );
  for ( auto kind : all_template_kinds() )
  {
    const auto k = constraint_dfa( kind, a, b );
    CHECK( run( k, Trace() ) == k.accepting( k.initial() ) );
  }
}

TEST_CASE( "every template stays small" )
{
  for ( auto kind : all_template_kinds() )
  {
    CAPTURE( template_identifier( kind ) );
    const auto raw = compile( ltlf::template_formula( kind, a, b ) );
    const auto d = minimize( raw );
    CHECK( d.state_count() <= 8 );
    CHECK( d.state_count() <= raw.state_count() );
    CHECK( minimize( d ) == d );
  }
}

TEST_CASE( "state budget is enforced" )
{
  CHECK_THROWS_AS( compile( ltlf::template_formula( TemplateKind::Response, a, b ), CompileOptions{ 1 } ),
                   StateBudgetExceeded );
  const auto nested = ltlf::parse_formula( "X X X X X X X X X X a" );
  CHECK_THROWS_AS( compile( nested, CompileOptions{ 5 } ), StateBudgetExceeded );
  CHECK_NOTHROW( compile( nested, CompileOptions{ 16 } ) );
}

TEST_CASE( "automaton language equals the formula on all traces up to length 10" )
{
  const std::vector<Activity> sigma{ a, b, c };
  for ( auto kind : all_template_kinds() )
  {
    CAPTURE( template_identifier( kind ) );
    const auto f = ltlf::template_formula( kind, a, b );
    const auto raw = compile( f );
    const auto d = minimize( raw );
    std::size_t bad = 0;
    oracle::for_each_trace( sigma, 10, [&]( const Trace& t ) {
      const bool expected = ltlf::eval_tree( f, t );
      if ( run( d, t ) != expected || run( raw, t ) != expected )
        ++bad;
    } );
    CHECK( bad == 0 );
  }
}

TEST_CASE( "chain response language matches the naive oracle" )
{
  const auto f = ltlf::template_formula( TemplateKind::ChainResponse, a, b );
  const auto d = constraint_dfa( TemplateKind::ChainResponse, a, b );
  oracle::for_each_trace( { a, b, c }, 5, [&]( const Trace& t ) { REQUIRE( run( d, t ) == oracle::holds( f, t ) ); } );
}

TEST_CASE( "random formulas compile to equivalent automata" )
{
  std::mt19937_64 rng( 11 );
  const std::vector<Activity> atoms{ a, b };
  const std::vector<Activity> sigma{ a, b, c };
  for ( int i = 0; i < 300; ++i )
  {
    const auto f = oracle::random_formula( rng, atoms, 3 );
    const auto d = minimize( compile( f ) );
    for ( int j = 0; j < 40; ++j )
    {
      const auto t = oracle::random_trace( rng, sigma, 10 );
      if ( run( d, t ) != ltlf::eval_tree( f, t ) )
      {
        CAPTURE( ltlf::to_string( f ) );
        CAPTURE( trace_to_string( t ) );
        FAIL( "automaton disagrees with formula" );
      }
    }
  }
}

TEST_CASE( "minimize preserves acceptance on long random traces" )
{
  std::mt19937_64 rng( 3 );
  const std::vector<Activity> sigma{ a, b, c };
  for ( auto kind : all_template_kinds() )
  {
    const auto raw = compile( ltlf::template_formula( kind, a, b ) );
    const auto d = minimize( raw );
    std::size_t bad = 0;
    for ( int i = 0; i < 100000; ++i )
    {
      const auto t = oracle::random_trace( rng, sigma, 50 );
      bad += run( raw, t ) != run( d, t ) ? 1 : 0;
    }
    CHECK( bad == 0 );
  }
}

TEST_CASE( "minimal state counts match a truncated Myhill-Nerode oracle" )
{
  // Suffixes of length 4 separate every pair of residuals for these templates, and
  // prefixes of length 4 reach every state, so the oracle count is exact.
  const std::vector<Activity> sigma{ a, b, c };
  for ( auto kind : { TemplateKind::Succession, TemplateKind::Response, TemplateKind::AlternateSuccession,
                      TemplateKind::ChainSuccession, TemplateKind::AlternatePrecedence } )
  {
    CAPTURE( template_identifier( kind ) );
    const auto f = ltlf::template_formula( kind, a, b );
    CHECK( constraint_dfa( kind, a, b ).state_count() == truncated_nerode_classes( f, sigma, 4, 4 ) );
  }
}

TEST_CASE( "complement and single-bit mutation" )
{
  const auto d = constraint_dfa( TemplateKind::Response, a, b );
  const auto neg = d.complement();
  oracle::for_each_trace( { a, b, c }, 6, [&]( const Trace& t ) { REQUIRE( run( d, t ) != run( neg, t ) ); } );
  const auto mutant = d.with_accepting_flipped( 1 );
  CHECK( run( mutant, trace_from_chars( 0, "a" ) ) );
  CHECK_FALSE( run( d, trace_from_chars( 0, "a" ) ) );
}

TEST_CASE( "dfa constructor rejects partial tables" )
{
  CHECK_THROWS_AS( Dfa( { a }, 1, { 0 }, 0, { true } ), InvalidArgument );
  CHECK_THROWS_AS( Dfa( { a }, 1, { 0, 1 }, 0, { true } ), InvalidArgument );
  CHECK_NOTHROW( Dfa( { a }, 1, { 0, 0 }, 0, { true } ) );
}
