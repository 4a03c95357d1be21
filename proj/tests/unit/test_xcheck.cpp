#include <declare/ingest.hpp>
#include <declare/xcheck.hpp>

#include <doctest.h>
#include <json.hpp>

using namespace declare;
using namespace declare::xcheck;

TEST_CASE( "no disagreements up to length 10" )
{
  const auto r = exhaustive_check( all_template_kinds(), 10 );
  CHECK( r.traces == 88573 );
  CHECK( r.disagreements.empty() );
}

TEST_CASE( "length zero only checks the empty trace" )
{
  const auto r = exhaustive_check( all_template_kinds(), 0 );
  CHECK( r.traces == 1 );
  CHECK( r.disagreements.empty() );
}

TEST_CASE( "random traces up to length 20" )
{
  const auto r = random_check( all_template_kinds(), 20000, 20, 1 );
  CHECK( r.traces == 20000 );
  CHECK( r.disagreements.empty() );
  CHECK( random_check( all_template_kinds(), 0, 20, 1 ).disagreements.empty() );
}

TEST_CASE( "a corrupted automaton is caught" )
{
  const std::array kinds{ TemplateKind::Response };
  Options mutated;
  mutated.automaton = []( const Constraint& c ) { return automata::constraint_dfa( c ).with_accepting_flipped( 1 ); };

  const auto r = exhaustive_check( kinds, 4, mutated );
  REQUIRE_FALSE( r.disagreements.empty() );
  const auto& first = r.disagreements.front();
  CHECK( first.kind == TemplateKind::Response );
  CHECK( first.verdicts[0] == first.verdicts[1] );
  CHECK( first.verdicts[2] != first.verdicts[1] );
  // shortest first, then lexicographic
  for ( std::size_t i = 1; i < r.disagreements.size(); ++i )
  {
    const auto& x = r.disagreements[i - 1].trace;
    const auto& y = r.disagreements[i].trace;
    CHECK( ( x.size() < y.size() ||
             ( x.size() == y.size() && trace_to_string( x, " " ) < trace_to_string( y, " " ) ) ) );
  }

  // every reported trace replays through the factlog reader
  for ( const auto& d : r.disagreements )
  {
    if ( d.trace.empty() )
      continue;
    const auto log = ingest::parse_factlog( replay_facts( d ) );
    REQUIRE( log.size() == 1 );
    CHECK( log[0].events().size() == d.trace.size() );
    CHECK( std::equal( log[0].events().begin(), log[0].events().end(), d.trace.events().begin() ) );
  }

  const auto sampled = random_check( kinds, 2000, 20, 3, mutated );
  CHECK_FALSE( sampled.disagreements.empty() );
}

TEST_CASE( "results do not depend on the thread count" )
{
  Options mutated;
  mutated.automaton = []( const Constraint& c ) { return automata::constraint_dfa( c ).with_accepting_flipped( 0 ); };
  Options one = mutated;
  one.threads = 1;
  Options many = mutated;
  many.threads = 7;
  const auto kinds = all_template_kinds();
  CHECK( exhaustive_check( kinds, 6, one ).disagreements == exhaustive_check( kinds, 6, many ).disagreements );
  CHECK( to_json( random_check( kinds, 5000, 20, 9, one ) ) == to_json( random_check( kinds, 5000, 20, 9, many ) ) );
  CHECK( random_check( kinds, 5000, 20, 9, one ).disagreements != random_check( kinds, 5000, 20, 10, one ).disagreements );
}

TEST_CASE( "json report" )
{
  Options mutated;
  mutated.automaton = []( const Constraint& c ) { return automata::constraint_dfa( c ).with_accepting_flipped( 0 ); };
  const std::array kinds{ TemplateKind::Precedence };
  const auto r = exhaustive_check( kinds, 1, mutated );
  const auto j = nlohmann::ordered_json::parse( to_json( r ) );
  CHECK( j["traces"] == 4 );
  REQUIRE( j["disagreements"].size() == r.disagreements.size() );
  REQUIRE_FALSE( r.disagreements.empty() );
  const auto& first = j["disagreements"][0];
  CHECK( first["template"] == "Precedence" );
  CHECK( first.contains( "direct" ) );
  CHECK( first.contains( "tree" ) );
  CHECK( first.contains( "dfa" ) );
  CHECK( first["trace"].empty() );
  CHECK( first["facts"] == "% empty trace\n" );
}
