#include "terms.hpp"

#include <map>
#include <set>
#include <sstream>

namespace declare::ingest
{

using detail::Clause;
using detail::Term;

EventLog parse_factlog( std::string_view text )
{
  std::map<TraceId, std::map<std::uint64_t, Activity>> traces;
  for ( const auto& c : detail::read_clauses( text ) )
  {
    if ( !c.body.empty() )
      throw ParseError( "rules are not allowed in a log", c.line );
    if ( !c.head.is( "trace", 3 ) )
      throw ParseError( "expected trace(I,T,A), found " + detail::describe( c.head ), c.line );
    const auto& args = c.head.args;
    if ( args[0].kind != Term::Kind::Integer || args[1].kind != Term::Kind::Integer )
      throw ParseError( "trace id and position must be non-negative integers", c.line );
    const auto a = detail::activity_of( args[2], c.line );
    if ( !traces[args[0].value].emplace( args[1].value, a ).second )
      throw ParseError( "duplicate position " + args[1].text + " in trace " + args[0].text, c.line );
  }

  std::vector<Trace> out;
  for ( const auto& [id, events] : traces )
  {
    std::vector<Activity> seq;
    for ( const auto& [pos, a] : events )
    {
      if ( pos != seq.size() )
        throw ParseError( "trace " + std::to_string( id ) + " has no event at position " + std::to_string( seq.size() ) );
      seq.push_back( a );
    }
    out.emplace_back( id, std::move( seq ) );
  }
  return EventLog( std::move( out ) );
}

std::string write_factlog( const EventLog& log )
{
  std::vector<const Trace*> sorted;
  for ( const auto& t : log.traces() )
    sorted.push_back( &t );
  std::sort( sorted.begin(), sorted.end(), []( const Trace* x, const Trace* y ) { return x->id() < y->id(); } );

  std::string out;
  for ( const auto* t : sorted )
  {
    if ( t->empty() )
      continue;
    for ( std::size_t pos = 0; pos < t->size(); ++pos )
    {
      if ( pos > 0 )
        out += ' ';
      out += "trace(" + std::to_string( t->id() ) + "," + std::to_string( pos ) + "," +
             detail::format_label( ( *t )[pos].label() ) + ").";
    }
    out += '\n';
  }
  return out;
}

std::string write_factlog_lines( const Trace& trace )
{
  std::string out;
  for ( std::size_t pos = 0; pos < trace.size(); ++pos )
    out += "trace(" + std::to_string( trace.id() ) + "," + std::to_string( pos ) + "," +
           detail::format_label( trace[pos].label() ) + ").\n";
  return out;
}

namespace
{

/// Argument index from arg_0 / arg_1.
int argument_index( const Term& t, std::size_t line )
{
  if ( t.kind == Term::Kind::Constant && t.text == "arg_0" )
    return 0;
  if ( t.kind == Term::Kind::Constant && t.text == "arg_1" )
    return 1;
  throw ParseError( "expected arg_0 or arg_1, found " + detail::describe( t ), line );
}

TemplateKind kind_of( const Term& t, std::size_t line )
{
  if ( t.kind != Term::Kind::String && t.kind != Term::Kind::Constant )
    throw ParseError( "expected a template name, found " + detail::describe( t ), line );
  if ( auto k = parse_template_kind( t.text ) )
    return *k;
  throw ParseError( "unknown template \"" + t.text + "\"; valid templates: " + template_kind_list(), line );
}

/// Constraint ids in queries may be integers or constants; models need integers.
std::string id_key( const Term& t, std::size_t line )
{
  if ( t.kind == Term::Kind::Integer || t.kind == Term::Kind::Constant )
    return t.text;
  throw ParseError( "expected a constraint id, found " + detail::describe( t ), line );
}

template <typename Slot>
struct Draft
{
  std::size_t order = 0;
  std::size_t line = 0;
  std::optional<TemplateKind> kind;
  std::optional<Slot> args[2];
};

} // namespace

DeclareModel parse_model( std::string_view text )
{
  std::map<ConstraintId, Draft<Activity>> drafts;
  for ( const auto& c : detail::read_clauses( text ) )
  {
    if ( !c.body.empty() )
      throw ParseError( "rules are not allowed in a model", c.line );
    const auto& h = c.head;
    if ( !h.is( "constraint", 2 ) && !h.is( "bind", 3 ) )
      throw ParseError( "expected constraint/2 or bind/3, found " + detail::describe( h ), c.line );
    if ( h.args[0].kind != Term::Kind::Integer )
      throw ParseError( "constraint id must be a non-negative integer", c.line );
    auto& d = drafts[h.args[0].value];
    if ( d.line == 0 )
      d.line = c.line;
    if ( h.text == "constraint" )
    {
      if ( d.kind )
        throw ParseError( "constraint " + h.args[0].text + " declared twice", c.line );
      d.kind = kind_of( h.args[1], c.line );
    }
    else
    {
      auto& slot = d.args[argument_index( h.args[1], c.line )];
      if ( slot )
        throw ParseError( "argument bound twice in constraint " + h.args[0].text, c.line );
      slot = detail::activity_of( h.args[2], c.line );
    }
  }

  std::vector<Constraint> out;
  for ( const auto& [id, d] : drafts )
  {
    if ( !d.kind )
      throw ParseError( "bindings for undeclared constraint " + std::to_string( id ), d.line );
    if ( !d.args[0] || !d.args[1] )
      throw ParseError( "constraint " + std::to_string( id ) + " needs both arg_0 and arg_1", d.line );
    out.push_back( Constraint{ id, *d.kind, *d.args[0], *d.args[1] } );
  }
  return DeclareModel( std::move( out ) );
}

std::string write_model( const DeclareModel& model )
{
  std::string out;
  for ( const auto& c : model.constraints() )
  {
    const auto id = std::to_string( c.id );
    out += "constraint(" + id + ",\"" + std::string( template_label( c.kind ) ) + "\").\n";
    out += "bind(" + id + ",arg_0," + detail::format_label( c.activation.label() ) + "). ";
    out += "bind(" + id + ",arg_1," + detail::format_label( c.target.label() ) + ").\n";
  }
  return out;
}

Query parse_query( std::string_view text )
{
  const auto variable_of = [&]( const Term& t, std::size_t line ) {
    if ( !t.is( "var", 1 ) || !t.args[0].is_label() )
      throw ParseError( "expected var(name), found " + detail::describe( t ), line );
    return t.args[0].text;
  };

  std::map<std::string, Draft<Slot>> drafts;
  std::map<std::string, std::vector<Activity>> domains;
  for ( const auto& c : detail::read_clauses( text ) )
  {
    const auto& h = c.head;
    if ( !c.body.empty() )
    {
      // domain(var(x),A) :- trace(_,_,A).  spells out the default domain
      const bool default_domain = h.is( "domain", 2 ) && h.args[1].kind == Term::Kind::Variable && c.body.size() == 1 &&
                                  c.body[0].is( "trace", 3 ) && c.body[0].args[2].kind == Term::Kind::Variable &&
                                  c.body[0].args[2].text == h.args[1].text;
      if ( !default_domain )
        throw ParseError( "unsupported rule for " + detail::describe( h ), c.line );
      (void)variable_of( h.args[0], c.line );
      continue;
    }
    if ( h.is( "domain", 2 ) )
    {
      domains[variable_of( h.args[0], c.line )].push_back( detail::activity_of( h.args[1], c.line ) );
      continue;
    }
    if ( !h.is( "constraint", 2 ) && !h.is( "bind", 3 ) && !h.is( "var_bind", 3 ) )
      throw ParseError( "expected constraint/2, bind/3, var_bind/3 or domain/2, found " + detail::describe( h ), c.line );
    const auto key = id_key( h.args[0], c.line );
    auto [it, fresh] = drafts.try_emplace( key );
    auto& d = it->second;
    if ( fresh )
    {
      d.order = drafts.size();
      d.line = c.line;
    }
    if ( h.text == "constraint" )
    {
      if ( d.kind )
        throw ParseError( "constraint " + key + " declared twice", c.line );
      d.kind = kind_of( h.args[1], c.line );
      continue;
    }
    auto& slot = d.args[argument_index( h.args[1], c.line )];
    if ( slot )
      throw ParseError( "argument bound twice in constraint " + key, c.line );
    if ( h.text == "bind" )
      slot = Slot( detail::activity_of( h.args[2], c.line ) );
    else
      slot = Slot( Variable{ variable_of( h.args[2], c.line ) } );
  }

  std::vector<const Draft<Slot>*> ordered;
  for ( const auto& [key, d] : drafts )
  {
    if ( !d.kind )
      throw ParseError( "bindings for undeclared constraint " + key, d.line );
    if ( !d.args[0] || !d.args[1] )
      throw ParseError( "constraint " + key + " needs both arg_0 and arg_1", d.line );
    ordered.push_back( &d );
  }
  std::sort( ordered.begin(), ordered.end(), []( const auto* x, const auto* y ) { return x->order < y->order; } );

  Query q;
  for ( const auto* d : ordered )
    q.constraints.push_back( QueryConstraint{ *d->kind, *d->args[0], *d->args[1] } );
  const auto vars = q.variables();
  for ( auto& [name, values] : domains )
  {
    if ( !std::binary_search( vars.begin(), vars.end(), name ) )
      throw ParseError( "domain given for unused variable " + name );
    q.domains[name] = std::move( values );
  }
  return q;
}

} // namespace declare::ingest
