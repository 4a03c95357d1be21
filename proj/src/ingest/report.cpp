#include <declare/ingest.hpp>

#include <json.hpp>

namespace declare::ingest
{

using nlohmann::ordered_json;

namespace
{

std::string write_csv_report( const CheckReport& report, const DeclareModel& model )
{
  std::string out = "trace_id";
  for ( const auto& c : model.constraints() )
    out += ",c" + std::to_string( c.id );
  out += ",compliant\n";
  for ( std::size_t row = 0; row < report.trace_ids.size(); ++row )
  {
    out += std::to_string( report.trace_ids[row] );
    bool all = true;
    for ( std::size_t col = 0; col < report.constraint_ids.size(); ++col )
    {
      const bool s = report.at( row, col );
      all = all && s;
      out += s ? ",1" : ",0";
    }
    out += all ? ",1\n" : ",0\n";
  }
  return out;
}

} // namespace

std::string write_report( const CheckReport& report, const EventLog& log, const DeclareModel& model, Backend backend,
                          ReportFormat format )
{
  if ( format == ReportFormat::Csv )
    return write_csv_report( report, model );

  ordered_json j;
  j["log"] = { { "traces", log.size() }, { "events", log.event_count() } };
  auto constraints = ordered_json::array();
  for ( const auto& c : model.constraints() )
    constraints.push_back( { { "id", c.id },
                             { "template", std::string( template_identifier( c.kind ) ) },
                             { "arg_0", std::string( c.activation.label() ) },
                             { "arg_1", std::string( c.target.label() ) } } );
  j["model"] = constraints;
  j["backend"] = std::string( backend_name( backend ) );

  auto rows = ordered_json::array();
  for ( std::size_t row = 0; row < report.trace_ids.size(); ++row )
  {
    auto sat = ordered_json::array();
    for ( std::size_t col = 0; col < report.constraint_ids.size(); ++col )
      sat.push_back( report.at( row, col ) ? 1 : 0 );
    rows.push_back( sat );
  }
  j["matrix"] = { { "traces", report.trace_ids }, { "constraints", report.constraint_ids }, { "sat", rows } };
  j["compliant"] = report.compliant;
  auto supports = ordered_json::object();
  for ( const auto& [id, s] : report.support )
    supports[std::to_string( id )] = to_string( s );
  j["supports"] = supports;
  return j.dump( 2 ) + "\n";
}

std::string write_query_answers( const std::vector<QueryAnswer>& answers, Rational threshold, Backend backend )
{
  ordered_json j;
  j["backend"] = std::string( backend_name( backend ) );
  j["threshold"] = to_string( threshold );
  auto list = ordered_json::array();
  for ( const auto& a : answers )
  {
    auto binding = ordered_json::object();
    for ( const auto& [var, act] : a.binding )
      binding[var] = std::string( act.label() );
    list.push_back( { { "binding", binding }, { "support", to_string( a.support ) } } );
  }
  j["answers"] = list;
  return j.dump( 2 ) + "\n";
}

} // namespace declare::ingest
