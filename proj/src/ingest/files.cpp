#include <declare/ingest.hpp>

#include <zlib.h>

#include <fstream>
#include <memory>

namespace declare::ingest
{

namespace
{

bool ends_with( const std::filesystem::path& path, std::string_view suffix )
{
  const auto name = path.filename().string();
  return name.size() >= suffix.size() && name.compare( name.size() - suffix.size(), suffix.size(), suffix ) == 0;
}

using GzFile = std::unique_ptr<gzFile_s, decltype( &gzclose )>;

} // namespace

std::string read_file( const std::filesystem::path& path )
{
  // gzread passes uncompressed input through unchanged
  GzFile in( gzopen( path.c_str(), "rb" ), &gzclose );
  if ( !in )
    throw InvalidArgument( "cannot open " + path.string() );
  std::string out;
  char buf[1 << 16];
  int n;
  while ( ( n = gzread( in.get(), buf, sizeof buf ) ) > 0 )
    out.append( buf, static_cast<std::size_t>( n ) );
  if ( n < 0 )
    throw Error( "cannot read " + path.string() );
  return out;
}

void write_file( const std::filesystem::path& path, std::string_view content )
{
  if ( ends_with( path, ".gz" ) )
  {
    GzFile out( gzopen( path.c_str(), "wb" ), &gzclose );
    if ( !out || ( !content.empty() && gzwrite( out.get(), content.data(), static_cast<unsigned>( content.size() ) ) == 0 ) )
      throw Error( "cannot write " + path.string() );
    return;
  }
  std::ofstream out( path, std::ios::binary );
  out.write( content.data(), static_cast<std::streamsize>( content.size() ) );
  if ( !out )
    throw Error( "cannot write " + path.string() );
}

std::optional<LogFormat> format_from_path( const std::filesystem::path& path )
{
  if ( ends_with( path, ".xes" ) || ends_with( path, ".xes.gz" ) )
    return LogFormat::Xes;
  if ( ends_with( path, ".lp" ) )
    return LogFormat::Factlog;
  if ( ends_with( path, ".csv" ) )
    return LogFormat::Csv;
  return std::nullopt;
}

EventLog read_log( const std::filesystem::path& path )
{
  const auto format = format_from_path( path );
  if ( !format )
    throw InvalidArgument( "cannot infer the log format of " + path.string() + " (expected .xes, .xes.gz, .lp or .csv)" );
  const auto text = read_file( path );
  switch ( *format )
  {
  case LogFormat::Xes: return parse_xes( text );
  case LogFormat::Factlog: return parse_factlog( text );
  case LogFormat::Csv: return parse_csv( text, csv_has_position_column( text ) );
  }
  return {};
}

void write_log( const EventLog& log, const std::filesystem::path& path )
{
  const auto format = format_from_path( path );
  if ( !format )
    throw InvalidArgument( "cannot infer the log format of " + path.string() + " (expected .xes, .xes.gz, .lp or .csv)" );
  switch ( *format )
  {
  case LogFormat::Xes: write_file( path, write_xes( log ) ); break;
  case LogFormat::Factlog: write_file( path, write_factlog( log ) ); break;
  case LogFormat::Csv: write_file( path, write_csv( log ) ); break;
  }
}

} // namespace declare::ingest
