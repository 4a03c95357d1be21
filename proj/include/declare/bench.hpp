#pragma once

#include <declare/tasks.hpp>

#include <span>
#include <string>
#include <vector>

namespace declare
{

struct BenchTask
{
  std::string name;
  DeclareModel model;
};

struct BenchRow
{
  std::string task;
  Backend backend;
  unsigned run;
  double elapsed_ms;
};

/// Wall time of conformance_check per (task, backend, run), preparation included.
std::vector<BenchRow> bench( const EventLog& log, std::span<const BenchTask> tasks, std::span<const Backend> backends,
                             unsigned repeat, const RunOptions& options = {} );

/// `task,backend,run,elapsed_ms` with a header row.
std::string bench_csv( std::span<const BenchRow> rows );

/// Median elapsed time of one backend over all rows.
double median_ms( std::span<const BenchRow> rows, Backend backend );

} // namespace declare
