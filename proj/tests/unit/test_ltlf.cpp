#include <declare/ltlf.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace declare;
using namespace declare::ltlf;

namespace
{

const Activity a = Activity::intern( "a" );
const Activity b = Activity::intern( "b" );
const Activity c = Activity::intern( "c" );

Formula A()
{
  return Formula::atom( a );
}
Formula B()
{
  return Formula::atom( b );
}

const std::vector<std::string> pool{
    "G(a -> F b)",
    "!b W a",
    "G(a -> X(!a U b))",
    "(!b W a) & G(b -> Xw(!b W a))",
    "G(a -> X b)",
    "G(X b -> a) & !b",
    "F(a | b) & !(F a & F b)",
    "F a -> F b",
    "F a <-> F b",
    "X X c",
    "Xw Xw false",
    "a U (b U c)",
    "(a R b) | c",
    "G F a",
    "F G !a",
    "a W (b & X c)",
    "!(a U !b) -> G(c | Xw a)",
    "(a | b | c) & X(Xw b R a)",
    "true U (a & Xw false)",
    "G(c <-> X a)",
};

} // namespace

TEST_CASE( "parse builds the expected trees" )
{
  CHECK( parse_formula( "G(a -> F b)" ) == Formula::globally( Formula::implies( A(), Formula::eventually( B() ) ) ) );
  CHECK( parse_formula( "a" ) == A() );
  CHECK( parse_formula( "!b W a" ) == Formula::weak_until( Formula::make_not( B() ), A() ) );
  CHECK( parse_formula( "a U b U c" ) == parse_formula( "a U (b U c)" ) );
  CHECK( parse_formula( "a & b & c" ).node( 0 ).children.size() == 3 );
  CHECK( parse_formula( "a -> b -> c" ) == parse_formula( "a -> (b -> c)" ) );
  CHECK( parse_formula( "\"send offer\" & a" ).atoms().front().label() == "a" );
  CHECK( parse_formula( "Xw a" ).node( 0 ).op == Op::WeakNext );
  CHECK( parse_formula( "X a & b" ) == Formula::make_and( { Formula::next( A() ), B() } ) );
  CHECK( parse_formula( "F a U b" ) == Formula::until( Formula::eventually( A() ), B() ) );
  CHECK( parse_formula( "a | b & c" ).node( 0 ).op == Op::Or );
}

TEST_CASE( "parse errors carry an offset" )
{
  try
  {
    (void)parse_formula( "a & " );
    FAIL( "accepted a dangling operator" );
  }
  catch ( const ParseError& e )
  {
    CHECK( e.offset() == 4 );
  }
  CHECK_THROWS_AS( parse_formula( "a $ b" ), ParseError );
  CHECK_THROWS_AS( parse_formula( "(a" ), ParseError );
  CHECK_THROWS_AS( parse_formula( "a b" ), ParseError );
  CHECK_THROWS_AS( parse_formula( "" ), ParseError );
  CHECK_THROWS_AS( parse_formula( "\"*\"" ), ParseError );
}

TEST_CASE( "printing round-trips" )
{
  for ( const auto& text : pool )
  {
    const auto f = parse_formula( text );
    CAPTURE( text );
    CHECK( parse_formula( to_string( f ) ) == f );
  }
  std::mt19937_64 rng( 7 );
  const std::vector<Activity> atoms{ a, b, c, Activity::intern( "X" ), Activity::intern( "two words" ) };
  for ( int i = 0; i < 2000; ++i )
  {
    const auto f = oracle::random_formula( rng, atoms, 4 );
    CAPTURE( to_string( f ) );
    CHECK( parse_formula( to_string( f ) ) == f );
  }
}

TEST_CASE( "template formulas follow the template table" )
{
  CHECK( template_formula( TemplateKind::Response, a, b ) == parse_formula( "G(a -> F b)" ) );
  CHECK( template_formula( TemplateKind::ChainResponse, a, b ) == parse_formula( "G(a -> X b)" ) );
  CHECK( template_formula( TemplateKind::Precedence, a, b ) == parse_formula( "!b W a" ) );
  CHECK( template_formula( TemplateKind::ChainPrecedence, a, b ) == parse_formula( "G(X b -> a) & !b" ) );
  CHECK( template_formula( TemplateKind::AlternatePrecedence, a, b ) ==
         parse_formula( "(!b W a) & G(b -> Xw(!b W a))" ) );
  CHECK( template_formula( TemplateKind::Succession, a, b ) ==
         Formula::make_and( { parse_formula( "G(a -> F b)" ), parse_formula( "!b W a" ) } ) );
  CHECK( template_formula( TemplateKind::Choice, a, b ) == parse_formula( "F(a | b)" ) );
}

TEST_CASE( "eval_tree on the worked traces" )
{
  const auto response = template_formula( TemplateKind::Response, a, b );
  const auto chain = template_formula( TemplateKind::ChainResponse, a, b );
  CHECK( eval_tree( response, trace_from_chars( 0, "aaabc" ) ) );
  CHECK( eval_tree( response, trace_from_chars( 0, "abacb" ) ) );
  CHECK( eval_tree( response, trace_from_chars( 0, "abab" ) ) );
  CHECK_FALSE( eval_tree( chain, trace_from_chars( 0, "abacb" ) ) );
  CHECK( eval_tree( chain, trace_from_chars( 0, "abab" ) ) );
  CHECK_FALSE( eval_tree( parse_formula( "X a" ), trace_from_chars( 0, "a" ) ) );
  CHECK_FALSE( eval_tree( template_formula( TemplateKind::AlternateResponse, a, b ), trace_from_chars( 0, "aaabc" ) ) );
}

TEST_CASE( "ev_empty" )
{
  CHECK( ev_empty( parse_formula( "G(a -> F b)" ) ) );
  CHECK_FALSE( ev_empty( parse_formula( "F(a | b)" ) ) );
  CHECK( ev_empty( parse_formula( "!b" ) ) );
  CHECK( ev_empty( parse_formula( "Xw a" ) ) );
  CHECK_FALSE( ev_empty( parse_formula( "X true" ) ) );
  CHECK( ev_empty( parse_formula( "a W b" ) ) );
  CHECK( ev_empty( parse_formula( "a R b" ) ) );
  CHECK_FALSE( ev_empty( parse_formula( "true U b" ) ) );
  for ( const auto& text : pool )
  {
    const auto f = parse_formula( text );
    CHECK( ev_empty( f ) == eval_tree( f, Trace() ) );
    CHECK( ev_empty( f ) == oracle::holds( f, Trace() ) );
  }
}

TEST_CASE( "eval_tree agrees with the naive evaluator up to length 6" )
{
  const std::vector<Activity> sigma{ a, b, c };
  std::size_t checked = 0;
  for ( const auto& text : pool )
  {
    const auto f = parse_formula( text );
    oracle::for_each_trace( sigma, 6, [&]( const Trace& t ) {
      if ( eval_tree( f, t ) != oracle::holds( f, t ) )
      {
        CAPTURE( text );
        CAPTURE( trace_to_string( t ) );
        FAIL( "mismatch" );
      }
      ++checked;
    } );
  }
  CHECK( checked == pool.size() * 1093 );
}

TEST_CASE( "eval_table rows match per-suffix truth" )
{
  const auto f = parse_formula( "a U (b & X c)" );
  const auto t = trace_from_chars( 0, "aabcabc" );
  const auto table = eval_table( f, t );
  for ( std::size_t pos = 0; pos < t.size(); ++pos )
    for ( NodeId id = 0; id < f.size(); ++id )
      CHECK( table.at( id, pos ) == oracle::holds( f, id, t, pos ) );
}

TEST_CASE( "negation normal form preserves meaning" )
{
  CHECK( nnf( parse_formula( "!G(a -> F b)" ) ) == parse_formula( "F(a & G !b)" ) );
  CHECK( nnf( parse_formula( "!!a" ) ) == A() );

  const auto prec_fail = nnf( parse_formula( "!(!b W a)" ) );
  const auto paper_form = parse_formula( "F b & (b R !a)" );
  oracle::for_each_trace( { a, b, c }, 7, [&]( const Trace& t ) {
    REQUIRE( eval_tree( prec_fail, t ) == eval_tree( paper_form, t ) );
  } );

  std::mt19937_64 rng( 2024 );
  const std::vector<Activity> atoms{ a, b, c };
  std::size_t cases = 0;
  for ( int i = 0; i < 2500; ++i )
  {
    const auto f = oracle::random_formula( rng, atoms, 4 );
    const auto g = nnf( f );
    REQUIRE( is_nnf( g ) );
    for ( int j = 0; j < 6; ++j )
    {
      const auto t = oracle::random_trace( rng, atoms, 12 );
      if ( eval_tree( f, t ) != eval_tree( g, t ) )
      {
        CAPTURE( to_string( f ) );
        CAPTURE( to_string( g ) );
        CAPTURE( trace_to_string( t ) );
        FAIL( "nnf changed the verdict" );
      }
      ++cases;
    }
  }
  CHECK( cases >= 10000 );
}

TEST_CASE( "GF holds iff its body holds at the last position" )
{
  std::mt19937_64 rng( 99 );
  const std::vector<Activity> atoms{ a, b, c };
  for ( int i = 0; i < 300; ++i )
  {
    const auto body = oracle::random_formula( rng, atoms, 3 );
    const auto gf = Formula::globally( Formula::eventually( body ) );
    for ( int j = 0; j < 10; ++j )
    {
      auto t = oracle::random_trace( rng, atoms, 15 );
      if ( t.empty() )
        continue;
      const auto last = eval_table( body, t ).at( 0, t.size() - 1 );
      REQUIRE( eval_tree( gf, t ) == last );
    }
  }
}

TEST_CASE( "table fills are linear in formula size times trace length" )
{
  std::mt19937_64 rng( 5 );
  for ( const auto& text : pool )
  {
    const auto f = parse_formula( text );
    for ( std::size_t len : { 1u, 10u, 200u } )
    {
      std::vector<Activity> events( len, a );
      EvalStats stats;
      (void)eval_tree( f, Trace( 0, events ), &stats );
      CHECK( stats.table_fills == f.size() * len );
    }
  }
}

TEST_CASE( "reified facts of Response" )
{
  const auto f = template_formula( TemplateKind::Response, a, b );
  const std::vector<std::string> expected{ "always(0,1)", "implies(1,2,3)", "atom(2,arg_0)", "eventually(3,4)",
                                           "atom(4,arg_1)" };
  CHECK( reified_facts( f, { { a, "arg_0" }, { b, "arg_1" } } ) == expected );
}
