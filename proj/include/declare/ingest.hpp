#pragma once

#include <declare/core.hpp>
#include <declare/tasks.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace declare::ingest
{

/// Malformed input. `line` is 1-based when known.
class ParseError : public Error
{
public:
  ParseError( const std::string& message, std::optional<std::size_t> line = std::nullopt );
  std::optional<std::size_t> line() const noexcept { return line_; }

private:
  std::optional<std::size_t> line_;
};

/// XES subset: one trace per <trace>, activity from the "concept:name" string attribute.
EventLog parse_xes( std::string_view xml );
/// Reads .xes or gzip-compressed .xes.gz (detected by magic bytes).
EventLog read_xes( const std::filesystem::path& path );
std::string write_xes( const EventLog& log );

/*! \brief `trace(I,T,A).` facts.
 *
 * Facts may share a line; `%` starts a comment. Positions of each trace must
 * be dense from 0. Traces are ordered by id.
 */
EventLog parse_factlog( std::string_view text );
/// Ids ascending, positions ascending, one trace per line. Empty traces have no facts and are omitted.
std::string write_factlog( const EventLog& log );
/// One fact per line, as used for replaying a single trace.
std::string write_factlog_lines( const Trace& trace );

/// `constraint(ID,"Kind").` with `bind(ID,arg_0,A).` and `bind(ID,arg_1,B).`
DeclareModel parse_model( std::string_view text );
std::string write_model( const DeclareModel& model );

/*! \brief Query document, an extension of the model grammar.
 *
 * `constraint(C,"Kind").` declares an instance; each argument is given by
 * `bind(C,arg_i,activity).` or `var_bind(C,arg_i,var(x)).`; optional
 * `domain(var(x),activity).` facts restrict a variable. Constraint ids may
 * be integers or identifiers.
 */
Query parse_query( std::string_view text );

/*! \brief Rows of `case_id,activity[,position]`, located by header name.
 *
 * Without a position column the row order within a case is kept. When every
 * case id is a non-negative integer it becomes the trace id; otherwise cases
 * are sorted by id and numbered from 0.
 */
EventLog parse_csv( std::string_view text, bool has_position_column );
bool csv_has_position_column( std::string_view text );
std::string write_csv( const EventLog& log );

enum class LogFormat
{
  Xes,
  Factlog,
  Csv,
};

/// From the extension: .xes / .xes.gz, .lp, .csv.
std::optional<LogFormat> format_from_path( const std::filesystem::path& path );
EventLog read_log( const std::filesystem::path& path );
void write_log( const EventLog& log, const std::filesystem::path& path );

std::string read_file( const std::filesystem::path& path );
void write_file( const std::filesystem::path& path, std::string_view content );

enum class ReportFormat
{
  Json,
  Csv,
};

/// JSON keys in order: log, model, backend, matrix, compliant, supports.
std::string write_report( const CheckReport& report, const EventLog& log, const DeclareModel& model, Backend backend,
                          ReportFormat format );

std::string write_query_answers( const std::vector<QueryAnswer>& answers, Rational threshold, Backend backend );

} // namespace declare::ingest
