#include <declare/ingest.hpp>

#include <algorithm>
#include <charconv>
#include <map>

namespace declare::ingest
{

namespace
{

struct Row
{
  std::vector<std::string> fields;
  std::size_t line;
};

/// RFC 4180 records: quoted fields may hold commas, doubled quotes and newlines.
std::vector<Row> read_rows( std::string_view text )
{
  std::vector<Row> rows;
  Row row{ {}, 1 };
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  const auto end_row = [&] {
    row.fields.push_back( std::move( field ) );
    field.clear();
    if ( !( row.fields.size() == 1 && row.fields[0].empty() ) )
      rows.push_back( std::move( row ) );
    row = Row{ {}, line };
    any = false;
  };
  for ( std::size_t i = 0; i < text.size(); ++i )
  {
    const char c = text[i];
    if ( quoted )
    {
      if ( c == '"' && i + 1 < text.size() && text[i + 1] == '"' )
      {
        field += '"';
        ++i;
      }
      else if ( c == '"' )
        quoted = false;
      else
      {
        if ( c == '\n' )
          ++line;
        field += c;
      }
      continue;
    }
    if ( c == '"' && field.empty() )
      quoted = true;
    else if ( c == ',' )
    {
      row.fields.push_back( std::move( field ) );
      field.clear();
    }
    else if ( c == '\n' )
    {
      ++line;
      end_row();
      continue;
    }
    else if ( c != '\r' )
      field += c;
    any = true;
  }
  if ( quoted )
    throw ParseError( "unterminated quoted field", line );
  if ( any || !row.fields.empty() || !field.empty() )
    end_row();
  return rows;
}

std::optional<std::uint64_t> to_uint( std::string_view s )
{
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( ec != std::errc() || ptr != s.data() + s.size() || s.empty() )
    return std::nullopt;
  return v;
}

std::string csv_field( std::string_view s )
{
  if ( s.find_first_of( ",\"\n\r" ) == std::string_view::npos )
    return std::string( s );
  std::string out = "\"";
  for ( char c : s )
  {
    if ( c == '"' )
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> header_of( std::string_view text )
{
  auto rows = read_rows( text.substr( 0, text.find( '\n' ) ) );
  return rows.empty() ? std::vector<std::string>{} : rows.front().fields;
}

} // namespace

bool csv_has_position_column( std::string_view text )
{
  const auto h = header_of( text );
  return std::find( h.begin(), h.end(), "position" ) != h.end();
}

EventLog parse_csv( std::string_view text, bool has_position_column )
{
  const auto rows = read_rows( text );
  if ( rows.empty() )
    throw ParseError( "missing header row", 1 );
  const auto& header = rows.front().fields;
  const auto column = [&]( std::string_view name ) -> std::optional<std::size_t> {
    const auto it = std::find( header.begin(), header.end(), name );
    if ( it == header.end() )
      return std::nullopt;
    return static_cast<std::size_t>( it - header.begin() );
  };
  const auto case_col = column( "case_id" );
  const auto act_col = column( "activity" );
  const auto pos_col = has_position_column ? column( "position" ) : std::nullopt;
  if ( !case_col || !act_col || ( has_position_column && !pos_col ) )
    throw ParseError( std::string( "header must name case_id, activity" ) + ( has_position_column ? " and position" : "" ),
                      rows.front().line );

  // per case: (position or arrival index) -> activity
  std::map<std::string, std::map<std::uint64_t, Activity>> cases;
  for ( std::size_t r = 1; r < rows.size(); ++r )
  {
    const auto& row = rows[r];
    if ( row.fields.size() != header.size() )
      throw ParseError( "expected " + std::to_string( header.size() ) + " fields, found " +
                            std::to_string( row.fields.size() ),
                        row.line );
    const auto& case_id = row.fields[*case_col];
    const auto& label = row.fields[*act_col];
    if ( case_id.empty() )
      throw ParseError( "empty case_id", row.line );
    if ( label.empty() )
      throw ParseError( "empty activity", row.line );
    if ( label == wildcard_label )
      throw ParseError( "\"*\" is reserved and cannot name an activity", row.line );
    auto& events = cases[case_id];
    std::uint64_t key = events.size();
    if ( pos_col )
    {
      const auto pos = to_uint( row.fields[*pos_col] );
      if ( !pos )
        throw ParseError( "position must be a non-negative integer, found '" + row.fields[*pos_col] + "'", row.line );
      key = *pos;
    }
    if ( !events.emplace( key, Activity::intern( label ) ).second )
      throw ParseError( "duplicate position " + std::to_string( key ) + " in case " + case_id, row.line );
  }

  const bool numeric = std::all_of( cases.begin(), cases.end(), []( const auto& kv ) { return to_uint( kv.first ).has_value(); } );
  std::vector<std::pair<std::string, const std::map<std::uint64_t, Activity>*>> ordered;
  for ( const auto& [id, events] : cases )
    ordered.emplace_back( id, &events );
  if ( numeric )
    std::sort( ordered.begin(), ordered.end(),
               []( const auto& x, const auto& y ) { return *to_uint( x.first ) < *to_uint( y.first ); } );

  std::vector<Trace> traces;
  for ( std::size_t i = 0; i < ordered.size(); ++i )
  {
    const auto& [case_id, events] = ordered[i];
    std::vector<Activity> seq;
    for ( const auto& [pos, a] : *events )
    {
      if ( pos != seq.size() )
        throw ParseError( "case " + case_id + " has no event at position " + std::to_string( seq.size() ) );
      seq.push_back( a );
    }
    traces.emplace_back( numeric ? *to_uint( case_id ) : i, std::move( seq ) );
  }
  return EventLog( std::move( traces ) );
}

std::string write_csv( const EventLog& log )
{
  std::string out = "case_id,activity,position\n";
  for ( const auto& t : log.traces() )
    for ( std::size_t pos = 0; pos < t.size(); ++pos )
      out += std::to_string( t.id() ) + "," + csv_field( t[pos].label() ) + "," + std::to_string( pos ) + "\n";
  return out;
}

} // namespace declare::ingest
