#include <declare/automata.hpp>
#include <declare/bench.hpp>
#include <declare/ingest.hpp>
#include <declare/loggen.hpp>
#include <declare/ltlf.hpp>
#include <declare/tasks.hpp>
#include <declare/xcheck.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace declare;

namespace
{

namespace exit_code
{
constexpr int ok = 0;
constexpr int failure = 1;
constexpr int parse_error = 2;
constexpr int invalid_argument = 3;
} // namespace exit_code

struct Common
{
  unsigned threads = 0;
};

Backend backend_arg( const std::string& name )
{
  if ( const auto b = parse_backend( name ) )
    return *b;
  throw InvalidArgument( "unknown backend '" + name + "' (expected direct, tree or dfa)" );
}

TemplateKind template_arg( const std::string& name )
{
  if ( const auto k = parse_template_kind( name ) )
    return *k;
  throw InvalidArgument( "unknown template '" + name + "'; valid templates: " + template_kind_list() );
}

/// `arg_0=a` / `arg_1=b` pairs.
std::map<std::string, Activity> bindings_arg( const std::vector<std::string>& binds )
{
  std::map<std::string, Activity> out;
  for ( const auto& b : binds )
  {
    const auto eq = b.find( '=' );
    const auto slot = b.substr( 0, eq );
    if ( eq == std::string::npos || ( slot != "arg_0" && slot != "arg_1" ) || eq + 1 == b.size() )
      throw InvalidArgument( "--bind expects arg_0=<activity> or arg_1=<activity>, got '" + b + "'" );
    const auto label = b.substr( eq + 1 );
    if ( label == wildcard_label )
      throw InvalidArgument( "\"*\" is reserved and cannot name an activity" );
    if ( !out.emplace( slot, Activity::intern( label ) ).second )
      throw InvalidArgument( slot + " is bound twice" );
  }
  return out;
}

std::string elapsed_since( std::chrono::steady_clock::time_point start )
{
  const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
  char buf[32];
  std::snprintf( buf, sizeof buf, "%.3fms", ms.count() );
  return buf;
}

/// Writes to `path`, or to stdout when it is empty.
void emit( const std::string& path, const std::string& content )
{
  if ( path.empty() )
    std::cout << content << std::flush;
  else
    ingest::write_file( path, content );
}

/// Summary lines go to stdout unless stdout carries the machine output.
std::ostream& summary_stream( const std::string& out )
{
  return out.empty() ? std::cerr : std::cout;
}

struct CheckArgs
{
  std::string log, model, backend = "direct", out, format = "json";
  bool alt_succession_last_target = false;
};

int run_check( const CheckArgs& a, const Common& common )
{
  const auto backend = backend_arg( a.backend );
  const auto format = a.format == "json" ? ingest::ReportFormat::Json
                      : a.format == "csv" ? ingest::ReportFormat::Csv
                                          : throw InvalidArgument( "unknown format '" + a.format + "' (expected json or csv)" );
  const auto log = ingest::read_log( a.log );
  const auto model = ingest::parse_model( ingest::read_file( a.model ) );
  const auto start = std::chrono::steady_clock::now();
  const auto report = conformance_check( log, model, backend, { common.threads, { a.alt_succession_last_target } } );
  const auto elapsed = elapsed_since( start );
  emit( a.out, ingest::write_report( report, log, model, backend, format ) );
  summary_stream( a.out ) << report.compliant.size() << "/" << log.size() << " constraints=" << model.size()
                          << " backend=" << backend_name( backend ) << " elapsed=" << elapsed << "\n";
  return exit_code::ok;
}

struct QueryArgs
{
  std::string log, templ, query_file, support, backend = "direct", out;
  std::vector<std::string> binds;
};

int run_query( const QueryArgs& a, const Common& common )
{
  const auto backend = backend_arg( a.backend );
  const auto threshold = parse_rational( a.support );
  if ( a.templ.empty() == a.query_file.empty() )
    throw InvalidArgument( "give exactly one of --template and --query-file" );

  Query q;
  if ( !a.query_file.empty() )
  {
    if ( !a.binds.empty() )
      throw InvalidArgument( "--bind applies to --template only" );
    q = ingest::parse_query( ingest::read_file( a.query_file ) );
  }
  else
  {
    // unbound arguments become the variables x (arg_0) and y (arg_1)
    const auto binds = bindings_arg( a.binds );
    const auto slot = [&]( const std::string& arg, const char* var ) -> Slot {
      if ( const auto it = binds.find( arg ); it != binds.end() )
        return it->second;
      return Variable{ var };
    };
    q.constraints.push_back( { template_arg( a.templ ), slot( "arg_0", "x" ), slot( "arg_1", "y" ) } );
  }

  const auto log = ingest::read_log( a.log );
  const auto start = std::chrono::steady_clock::now();
  QueryOptions options;
  options.threads = common.threads;
  const auto answers = query_check( q, log, threshold, backend, options );
  const auto elapsed = elapsed_since( start );
  emit( a.out, ingest::write_query_answers( answers, threshold, backend ) );
  summary_stream( a.out ) << "answers=" << answers.size() << " support>=" << to_string( threshold )
                          << " backend=" << backend_name( backend ) << " elapsed=" << elapsed << "\n";
  return exit_code::ok;
}

struct CompileArgs
{
  std::string templ, formula, out;
  std::vector<std::string> binds;
  bool dot = false, facts_json = false, facts = false, no_minimize = false;
  std::size_t max_states = 4096;
};

int run_compile( const CompileArgs& a )
{
  if ( a.templ.empty() == a.formula.empty() )
    throw InvalidArgument( "give exactly one of --template and --formula" );
  if ( int( a.dot ) + int( a.facts_json ) + int( a.facts ) > 1 )
    throw InvalidArgument( "choose one of --dot, --facts-json and --facts" );

  ltlf::Formula f;
  std::string name;
  automata::SymbolNames names;
  if ( !a.templ.empty() )
  {
    const auto kind = template_arg( a.templ );
    const auto binds = bindings_arg( a.binds );
    const auto pick = [&]( const char* slot, const char* fallback ) {
      const auto it = binds.find( slot );
      return it != binds.end() ? it->second : Activity::intern( fallback );
    };
    const auto activation = pick( "arg_0", "a" );
    const auto target = pick( "arg_1", "b" );
    f = ltlf::template_formula( kind, activation, target );
    name = template_identifier( kind );
    if ( binds.empty() )
      names = automata::argument_names( activation, target );
  }
  else
  {
    if ( !a.binds.empty() )
      throw InvalidArgument( "--bind applies to --template only" );
    f = ltlf::parse_formula( a.formula );
    name = "formula";
  }

  auto dfa = automata::compile( f, { a.max_states } );
  if ( !a.no_minimize )
    dfa = automata::minimize( dfa );
  if ( a.dot )
    emit( a.out, automata::to_dot( dfa, name, names ) );
  else if ( a.facts )
    emit( a.out, automata::to_facts( dfa, name, names ) );
  else
    emit( a.out, automata::to_facts_json( dfa, name, names ) );
  return exit_code::ok;
}

struct ValidateArgs
{
  std::size_t max_len = 10, random_max_len = 20;
  std::uint64_t samples = 100000, seed = 1;
  std::vector<std::string> templates;
  bool alt_succession_last_target = false;
  std::string out;
};

int run_validate( const ValidateArgs& a, const Common& common )
{
  std::vector<TemplateKind> kinds;
  for ( const auto& t : a.templates )
    kinds.push_back( template_arg( t ) );
  if ( kinds.empty() )
    kinds.assign( all_template_kinds().begin(), all_template_kinds().end() );

  xcheck::Options options;
  options.threads = common.threads;
  options.direct.alternate_succession_last_target_rule = a.alt_succession_last_target;
  auto result = xcheck::exhaustive_check( kinds, a.max_len, options );
  auto sampled = xcheck::random_check( kinds, a.samples, a.random_max_len, a.seed, options );
  result.traces += sampled.traces;
  result.disagreements.insert( result.disagreements.end(), sampled.disagreements.begin(), sampled.disagreements.end() );

  if ( !a.out.empty() )
    ingest::write_file( a.out, xcheck::to_json( result ) );
  for ( const auto& d : result.disagreements )
  {
    std::cout << template_identifier( d.kind ) << " [" << trace_to_string( d.trace, " " ) << "]";
    for ( auto b : all_backends() )
      std::cout << " " << backend_name( b ) << "=" << ( d.verdicts[static_cast<std::size_t>( b )] ? "sat" : "unsat" );
    std::cout << "\n";
  }
  std::cout << result.disagreements.size() << " disagreements over " << result.traces << " traces and "
            << kinds.size() << " templates\n";
  return result.disagreements.empty() ? exit_code::ok : exit_code::failure;
}

struct GenerateArgs
{
  std::string templ, out, manifest;
  std::vector<std::string> binds;
  std::size_t n = 1000, len = 50, alphabet = 15;
  std::uint64_t seed = 0;
};

int run_generate( const GenerateArgs& a, const Common& common )
{
  const auto kind = template_arg( a.templ );
  auto binds = bindings_arg( a.binds );
  binds.emplace( "arg_0", Activity::intern( "a_0" ) );
  binds.emplace( "arg_1", Activity::intern( "a_1" ) );
  const Constraint c{ 0, kind, binds.at( "arg_0" ), binds.at( "arg_1" ) };

  const auto start = std::chrono::steady_clock::now();
  const auto g = loggen::generate_log( c, a.n, a.len, a.alphabet, a.seed, { common.threads } );
  ingest::write_log( g.log, a.out );
  const auto manifest = a.manifest.empty() ? a.out + ".labels.csv" : a.manifest;
  ingest::write_file( manifest, loggen::write_manifest( g ) );
  std::cout << g.log.size() << " traces of length " << a.len << " for " << to_string( c ) << " written to " << a.out
            << " (labels in " << manifest << ") elapsed=" << elapsed_since( start ) << "\n";
  return exit_code::ok;
}

struct BenchArgs
{
  std::string log, out;
  std::vector<std::string> models, backends{ "direct", "tree", "dfa" };
  unsigned repeat = 3;
};

int run_bench( const BenchArgs& a, const Common& common )
{
  std::vector<Backend> backends;
  for ( const auto& b : a.backends )
    backends.push_back( backend_arg( b ) );
  if ( a.repeat == 0 )
    throw InvalidArgument( "--repeat must be positive" );
  std::vector<BenchTask> tasks;
  for ( const auto& m : a.models )
    tasks.push_back( { std::filesystem::path( m ).stem().string(), ingest::parse_model( ingest::read_file( m ) ) } );
  const auto log = ingest::read_log( a.log );
  const auto rows = bench( log, tasks, backends, a.repeat, { common.threads, {} } );
  emit( a.out, bench_csv( rows ) );
  for ( auto b : backends )
  {
    char ms[32];
    std::snprintf( ms, sizeof ms, "%.3f", median_ms( rows, b ) );
    summary_stream( a.out ) << "backend=" << backend_name( b ) << " median_ms=" << ms << "\n";
  }
  return exit_code::ok;
}

struct ConvertArgs
{
  std::string in, out;
};

int run_convert( const ConvertArgs& a )
{
  if ( !ingest::format_from_path( a.out ) )
    throw InvalidArgument( "cannot infer the log format of " + a.out + " (expected .xes, .xes.gz, .lp or .csv)" );
  const auto log = ingest::read_log( a.in );
  ingest::write_log( log, a.out );
  std::cout << log.size() << " traces, " << log.event_count() << " events written to " << a.out << "\n";
  return exit_code::ok;
}

int report( const std::exception& e, int code )
{
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Declare constraint checking over event logs" };
  app.require_subcommand( 1 );
  app.fallthrough();
  Common common;
  app.add_option( "--threads", common.threads, "Worker threads (0 = all cores)" );

  CheckArgs check;
  auto* check_cmd = app.add_subcommand( "check", "Check a log against a Declare model" );
  check_cmd->add_option( "--log", check.log, "Event log (.xes, .xes.gz, .lp, .csv)" )->required();
  check_cmd->add_option( "--model", check.model, "Model facts" )->required();
  check_cmd->add_option( "--backend", check.backend, "direct, tree or dfa" )->capture_default_str();
  check_cmd->add_option( "--out", check.out, "Report path (default: stdout)" );
  check_cmd->add_option( "--format", check.format, "json or csv" )->capture_default_str();
  check_cmd->add_flag( "--alt-succession-last-target", check.alt_succession_last_target,
                       "Direct backend: also fail Alternate Succession when the trace ends with the target" );

  QueryArgs query;
  auto* query_cmd = app.add_subcommand( "query", "Find template bindings meeting a support threshold" );
  query_cmd->add_option( "--log", query.log, "Event log" )->required();
  query_cmd->add_option( "--template", query.templ, "Template name" );
  query_cmd->add_option( "--bind", query.binds, "Fix an argument, e.g. arg_0=a" );
  query_cmd->add_option( "--query-file", query.query_file, "Multi-constraint query facts" );
  query_cmd->add_option( "--support", query.support, "Threshold in (0,1], decimal or p/q" )->required();
  query_cmd->add_option( "--backend", query.backend, "direct, tree or dfa" )->capture_default_str();
  query_cmd->add_option( "--out", query.out, "Answers path (default: stdout)" );

  CompileArgs compile;
  auto* compile_cmd = app.add_subcommand( "compile", "Compile a template or formula to a DFA" );
  compile_cmd->add_option( "--template", compile.templ, "Template name" );
  compile_cmd->add_option( "--bind", compile.binds, "Activities for the arguments (default a, b)" );
  compile_cmd->add_option( "--formula", compile.formula, "LTLf formula" );
  compile_cmd->add_flag( "--dot", compile.dot, "Graphviz output" );
  compile_cmd->add_flag( "--facts-json", compile.facts_json, "Transition table as JSON (default)" );
  compile_cmd->add_flag( "--facts", compile.facts, "Transition table as facts" );
  compile_cmd->add_flag( "--no-minimize", compile.no_minimize, "Keep the progression automaton" );
  compile_cmd->add_option( "--max-states", compile.max_states, "State budget" )->capture_default_str();
  compile_cmd->add_option( "--out", compile.out, "Output path (default: stdout)" );

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand( "validate", "Search for disagreements between the backends" );
  validate_cmd->add_option( "--max-len", validate.max_len, "Exhaustive bound" )->capture_default_str();
  validate_cmd->add_option( "--samples", validate.samples, "Random traces" )->capture_default_str();
  validate_cmd->add_option( "--random-max-len", validate.random_max_len, "Random trace length bound" )
      ->capture_default_str();
  validate_cmd->add_option( "--seed", validate.seed, "Sampling seed" )->capture_default_str();
  validate_cmd->add_option( "--template", validate.templates, "Restrict to these templates" );
  validate_cmd->add_flag( "--alt-succession-last-target", validate.alt_succession_last_target,
                          "Direct backend: also fail Alternate Succession when the trace ends with the target" );
  validate_cmd->add_option( "--out", validate.out, "Disagreement report (JSON)" );

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand( "generate", "Generate a labeled synthetic log" );
  generate_cmd->add_option( "--template", generate.templ, "Template name" )->required();
  generate_cmd->add_option( "--bind", generate.binds, "Arguments among a_0..a_{k-1} (default a_0, a_1)" );
  generate_cmd->add_option( "--n", generate.n, "Number of traces (even)" )->capture_default_str();
  generate_cmd->add_option( "--len", generate.len, "Trace length" )->capture_default_str();
  generate_cmd->add_option( "--alphabet", generate.alphabet, "Alphabet size k" )->capture_default_str();
  generate_cmd->add_option( "--seed", generate.seed, "Base seed" )->capture_default_str();
  generate_cmd->add_option( "--out", generate.out, "Log path" )->required();
  generate_cmd->add_option( "--manifest", generate.manifest, "Label manifest (default: <out>.labels.csv)" );

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand( "bench", "Time conformance checking per backend" );
  bench_cmd->add_option( "--log", bench_args.log, "Event log" )->required();
  bench_cmd->add_option( "--model", bench_args.models, "Model files, one task each" )->required();
  bench_cmd->add_option( "--backends", bench_args.backends, "Backends to time" )->capture_default_str();
  bench_cmd->add_option( "--repeat", bench_args.repeat, "Runs per task and backend" )->capture_default_str();
  bench_cmd->add_option( "--out", bench_args.out, "CSV path (default: stdout)" );

  ConvertArgs convert;
  auto* convert_cmd = app.add_subcommand( "convert", "Convert between XES, fact and CSV logs" );
  convert_cmd->add_option( "--in", convert.in, "Input log" )->required();
  convert_cmd->add_option( "--out", convert.out, "Output log" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e );
    return code == 0 ? exit_code::ok : exit_code::invalid_argument;
  }

  try
  {
    if ( *check_cmd )
      return run_check( check, common );
    if ( *query_cmd )
      return run_query( query, common );
    if ( *compile_cmd )
      return run_compile( compile );
    if ( *validate_cmd )
      return run_validate( validate, common );
    if ( *generate_cmd )
      return run_generate( generate, common );
    if ( *bench_cmd )
      return run_bench( bench_args, common );
    if ( *convert_cmd )
      return run_convert( convert );
  }
  catch ( const ingest::ParseError& e )
  {
    return report( e, exit_code::parse_error );
  }
  catch ( const ltlf::ParseError& e )
  {
    return report( e, exit_code::parse_error );
  }
  catch ( const InvalidArgument& e )
  {
    return report( e, exit_code::invalid_argument );
  }
  catch ( const std::exception& e )
  {
    return report( e, exit_code::failure );
  }
  return exit_code::failure;
}
