#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace
{

const std::filesystem::path fixtures = DECLARE_FIXTURES;

struct Run
{
  int code;
  std::string out;
};

/// Runs the CLI with stderr folded into stdout.
Run cli( const std::string& args )
{
  const auto command = std::string( DECLARE_CLI ) + " " + args + " 2>&1";
  FILE* pipe = popen( command.c_str(), "r" );
  REQUIRE( pipe );
  std::string out;
  std::array<char, 4096> buf;
  while ( const auto n = std::fread( buf.data(), 1, buf.size(), pipe ) )
    out.append( buf.data(), n );
  const int status = pclose( pipe );
  return { WIFEXITED( status ) ? WEXITSTATUS( status ) : -1, out };
}

std::string fixture( const char* name )
{
  return ( fixtures / name ).string();
}

std::string slurp( const std::filesystem::path& p )
{
  std::ifstream in( p );
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir
{
  std::filesystem::path path = std::filesystem::temp_directory_path() / "declare_cli_test";
  TempDir() { std::filesystem::create_directories( path ); }
  ~TempDir() { std::filesystem::remove_all( path ); }
  std::string operator/( const char* name ) const { return ( path / name ).string(); }
};

} // namespace

TEST_CASE( "check prints a summary and writes the report" )
{
  TempDir tmp;
  auto r = cli( "check --log " + fixture( "query_example.lp" ) + " --model " + fixture( "response_ac.model.lp" ) +
                " --out " + ( tmp / "r.json" ) );
  CHECK( r.code == 0 );
  CHECK( r.out.rfind( "1/3 constraints=1 backend=direct elapsed=", 0 ) == 0 );
  const auto j = nlohmann::json::parse( slurp( tmp / "r.json" ) );
  CHECK( j["compliant"] == nlohmann::json::parse( "[1]" ) );

  r = cli( "check --log " + fixture( "query_example.lp" ) + " --model " + fixture( "empty.model.lp" ) + " --out " +
           ( tmp / "e.json" ) );
  CHECK( r.out.rfind( "3/3 constraints=0", 0 ) == 0 );
}

TEST_CASE( "sepsis-style model on a toy log" )
{
  for ( const char* backend : { "direct", "tree", "dfa" } )
  {
    const auto r = cli( "check --log " + fixture( "sepsis_toy.xes" ) + " --model " + fixture( "sepsis.model.lp" ) +
                        " --format csv --backend " + backend );
    CHECK( r.code == 0 );
    CHECK( r.out.find( "trace_id,c0,c1,c2,compliant\n0,1,1,1,1\n1,0,1,1,0\n2,1,0,0,0\n" ) == 0 );
  }
}

TEST_CASE( "query answers" )
{
  auto r = cli( "query --log " + fixture( "query_example.lp" ) + " --template Response --bind arg_0=a --support 0.5" );
  CHECK( r.code == 0 );
  const auto json = r.out.substr( 0, r.out.rfind( "answers=" ) );
  const auto j = nlohmann::json::parse( json );
  REQUIRE( j["answers"].size() == 1 );
  CHECK( j["answers"][0]["binding"]["y"] == "b" );
  CHECK( j["answers"][0]["support"] == "2/3" );

  r = cli( "query --log " + fixture( "query_example.lp" ) + " --template Response --bind arg_0=a --support 1/3" );
  CHECK( r.out.find( "answers=3" ) != std::string::npos );

  r = cli( "query --log " + fixture( "query_example.lp" ) + " --query-file " + fixture( "response_query.lp" ) +
           " --support 0.5 --backend tree" );
  CHECK( r.code == 0 );
}

TEST_CASE( "exit codes" )
{
  auto r = cli( "query --log " + fixture( "query_example.lp" ) + " --template Respo --support 0.5" );
  CHECK( r.code == 3 );
  for ( const char* name : { "Choice", "ExclusiveChoice", "RespondedExistence", "Coexistence", "Response",
                             "Precedence", "AlternateResponse", "AlternatePrecedence", "ChainResponse",
                             "ChainPrecedence", "Succession", "AlternateSuccession", "ChainSuccession" } )
    CHECK( r.out.find( name ) != std::string::npos );

  CHECK( cli( "query --log " + fixture( "query_example.lp" ) + " --template Response --support 0" ).code == 3 );
  CHECK( cli( "check --log " + fixture( "query_example.lp" ) ).code == 3 );
  CHECK( cli( "check --log /nonexistent.lp --model " + fixture( "empty.model.lp" ) ).code == 3 );
  CHECK( cli( "check --log " + fixture( "query_example.lp" ) + " --model " + fixture( "empty.model.lp" ) +
              " --backend nope" )
             .code == 3 );
  CHECK( cli( "check --log " + fixture( "missing_name.xes" ) + " --model " + fixture( "empty.model.lp" ) ).code == 2 );
  CHECK( cli( "check --log " + fixture( "query_example.lp" ) + " --model " + fixture( "response_query.lp" ) ).code ==
         2 );
  CHECK( cli( "compile --formula \"G(a -> F b\"" ).code == 2 );
  CHECK( cli( "frobnicate" ).code == 3 );
  CHECK( cli( "--help" ).code == 0 );
}

TEST_CASE( "compile exports the response automaton" )
{
  const auto r = cli( "compile --template Response --facts-json" );
  REQUIRE( r.code == 0 );
  const auto j = nlohmann::json::parse( r.out );
  CHECK( j["initial"] == 0 );
  CHECK( j["accepting"] == nlohmann::json::parse( "[0]" ) );
  CHECK( j["transitions"] == nlohmann::json::parse( R"([[0,"arg_0",1],[0,"arg_1",0],[0,"*",0],
                                                        [1,"arg_0",1],[1,"arg_1",0],[1,"*",1]])" ) );
  CHECK( cli( "compile --template Response --dot" ).out.rfind( "digraph", 0 ) == 0 );
  CHECK( cli( "compile --formula \"a U b\" --facts" ).code == 0 );
}

TEST_CASE( "validate reports no disagreements" )
{
  const auto r = cli( "validate --max-len 10 --samples 20000" );
  CHECK( r.code == 0 );
  CHECK( r.out.find( "0 disagreements" ) != std::string::npos );
}

TEST_CASE( "generate, convert and bench" )
{
  TempDir tmp;
  auto r = cli( "generate --template ChainResponse --n 40 --len 30 --alphabet 6 --seed 3 --out " + ( tmp / "g.lp" ) );
  REQUIRE( r.code == 0 );
  const auto manifest = slurp( tmp / "g.lp.labels.csv" );
  CHECK( manifest.rfind( "trace_id,label\n0,positive\n", 0 ) == 0 );
  CHECK( manifest.find( "39,negative\n" ) != std::string::npos );

  CHECK( cli( "generate --template Response --n 2 --len 1 --out " + ( tmp / "x.lp" ) ).code == 3 );

  std::ofstream( tmp / "m.model.lp" ) << "constraint(0,\"Chain Response\"). bind(0,arg_0,a_0). bind(0,arg_1,a_1).\n";
  r = cli( "check --log " + ( tmp / "g.lp" ) + " --model " + ( tmp / "m.model.lp" ) + " --out " + ( tmp / "c.json" ) );
  CHECK( r.out.rfind( "20/40 ", 0 ) == 0 );

  CHECK( cli( "convert --in " + ( tmp / "g.lp" ) + " --out " + ( tmp / "g.xes.gz" ) ).code == 0 );
  CHECK( cli( "convert --in " + ( tmp / "g.xes.gz" ) + " --out " + ( tmp / "g.csv" ) ).code == 0 );
  CHECK( cli( "convert --in " + ( tmp / "g.csv" ) + " --out " + ( tmp / "back.lp" ) ).code == 0 );
  CHECK( slurp( tmp / "back.lp" ) == slurp( tmp / "g.lp" ) );

  r = cli( "bench --log " + ( tmp / "g.lp" ) + " --model " + ( tmp / "m.model.lp" ) + " --repeat 2 --out " +
           ( tmp / "b.csv" ) );
  CHECK( r.code == 0 );
  const auto csv = slurp( tmp / "b.csv" );
  CHECK( csv.rfind( "task,backend,run,elapsed_ms\n", 0 ) == 0 );
  CHECK( std::count( csv.begin(), csv.end(), '\n' ) == 7 );
}

TEST_CASE( "outputs do not depend on threads or backend" )
{
  TempDir tmp;
  REQUIRE( cli( "generate --template Succession --n 200 --len 40 --seed 5 --out " + ( tmp / "g.lp" ) ).code == 0 );
  std::ofstream( tmp / "m.model.lp" ) << "constraint(0,\"Succession\"). bind(0,arg_0,a_0). bind(0,arg_1,a_1).\n"
                                      << "constraint(1,\"Precedence\"). bind(1,arg_0,a_2). bind(1,arg_1,a_3).\n";
  std::string reference;
  for ( const char* threads : { "1", "3", "8" } )
  {
    const auto out = tmp / ( std::string( "r" ) + threads + ".csv" ).c_str();
    REQUIRE( cli( std::string( "--threads " ) + threads + " check --format csv --log " + ( tmp / "g.lp" ) +
                  " --model " + ( tmp / "m.model.lp" ) + " --out " + out )
                 .code == 0 );
    if ( reference.empty() )
      reference = slurp( out );
    CHECK( slurp( out ) == reference );
  }
  for ( const char* backend : { "tree", "dfa" } )
  {
    const auto out = tmp / ( std::string( "b_" ) + backend + ".csv" ).c_str();
    REQUIRE( cli( std::string( "check --format csv --backend " ) + backend + " --log " + ( tmp / "g.lp" ) +
                  " --model " + ( tmp / "m.model.lp" ) + " --out " + out )
                 .code == 0 );
    CHECK( slurp( out ) == reference );
  }
}
