#include <declare/ingest.hpp>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>

namespace declare::ingest
{

namespace pt = boost::property_tree;

namespace
{

std::optional<std::string> concept_name( const pt::ptree& element )
{
  for ( const auto& [tag, child] : element )
  {
    if ( tag != "string" )
      continue;
    const auto key = child.get_optional<std::string>( "<xmlattr>.key" );
    if ( key && *key == "concept:name" )
      return child.get<std::string>( "<xmlattr>.value", "" );
  }
  return std::nullopt;
}

std::string escape_xml( std::string_view s )
{
  std::string out;
  for ( char c : s )
  {
    switch ( c )
    {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\'': out += "&apos;"; break;
    default: out += c;
    }
  }
  return out;
}

} // namespace

EventLog parse_xes( std::string_view xml )
{
  pt::ptree doc;
  try
  {
    std::istringstream in{ std::string( xml ) };
    pt::read_xml( in, doc );
  }
  catch ( const pt::xml_parser_error& e )
  {
    throw ParseError( "malformed XML: " + e.message(), e.line() ? std::optional<std::size_t>( e.line() ) : std::nullopt );
  }

  const auto root = doc.get_child_optional( "log" );
  if ( !root )
    throw ParseError( "missing <log> root element" );

  std::vector<Trace> traces;
  for ( const auto& [tag, trace] : *root )
  {
    if ( tag != "trace" )
      continue;
    const auto index = traces.size();
    std::vector<Activity> events;
    for ( const auto& [etag, event] : trace )
    {
      if ( etag != "event" )
        continue;
      const auto where = "trace " + std::to_string( index ) + " event " + std::to_string( events.size() );
      const auto name = concept_name( event );
      if ( !name )
        throw ParseError( where + ": missing concept:name" );
      if ( name->empty() )
        throw ParseError( where + ": empty concept:name" );
      if ( *name == wildcard_label )
        throw ParseError( where + ": \"*\" is reserved and cannot name an activity" );
      events.push_back( Activity::intern( *name ) );
    }
    traces.emplace_back( index, std::move( events ) );
  }
  return EventLog( std::move( traces ) );
}

EventLog read_xes( const std::filesystem::path& path )
{
  return parse_xes( read_file( path ) );
}

std::string write_xes( const EventLog& log )
{
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n";
  for ( const auto& t : log.traces() )
  {
    out << "  <trace>\n";
    out << "    <string key=\"concept:name\" value=\"" << t.id() << "\"/>\n";
    for ( auto a : t.events() )
      out << "    <event>\n      <string key=\"concept:name\" value=\"" << escape_xml( a.label() )
          << "\"/>\n    </event>\n";
    out << "  </trace>\n";
  }
  out << "</log>\n";
  return out.str();
}

} // namespace declare::ingest
