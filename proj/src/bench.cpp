#include <declare/bench.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace declare
{

std::vector<BenchRow> bench( const EventLog& log, std::span<const BenchTask> tasks, std::span<const Backend> backends,
                             unsigned repeat, const RunOptions& options )
{
  std::vector<BenchRow> rows;
  for ( const auto& task : tasks )
    for ( auto backend : backends )
      for ( unsigned run = 0; run < repeat; ++run )
      {
        const auto start = std::chrono::steady_clock::now();
        const auto report = conformance_check( log, task.model, backend, options );
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        (void)report;
        rows.push_back( { task.name, backend, run, elapsed.count() } );
      }
  return rows;
}

std::string bench_csv( std::span<const BenchRow> rows )
{
  std::string out = "task,backend,run,elapsed_ms\n";
  char ms[32];
  for ( const auto& r : rows )
  {
    std::snprintf( ms, sizeof ms, "%.3f", r.elapsed_ms );
    out += r.task + "," + std::string( backend_name( r.backend ) ) + "," + std::to_string( r.run ) + "," + ms + "\n";
  }
  return out;
}

double median_ms( std::span<const BenchRow> rows, Backend backend )
{
  std::vector<double> times;
  for ( const auto& r : rows )
    if ( r.backend == backend )
      times.push_back( r.elapsed_ms );
  if ( times.empty() )
    throw InvalidArgument( "no timings for backend " + std::string( backend_name( backend ) ) );
  std::sort( times.begin(), times.end() );
  const auto n = times.size();
  return n % 2 ? times[n / 2] : ( times[n / 2 - 1] + times[n / 2] ) / 2;
}

} // namespace declare
