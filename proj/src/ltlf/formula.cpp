#include <declare/ltlf.hpp>

#include <algorithm>
#include <set>

namespace declare::ltlf
{

Formula::Formula() : nodes_{ Node{ Op::True, {}, {} } } {}

Formula Formula::compose( Op op, std::initializer_list<const Formula*> kids )
{
  Formula out;
  out.nodes_.clear();
  out.nodes_.push_back( Node{ op, {}, {} } );
  for ( const Formula* kid : kids )
  {
    const auto offset = static_cast<NodeId>( out.nodes_.size() );
    out.nodes_[0].children.push_back( offset );
    for ( Node n : kid->nodes_ )
    {
      for ( auto& c : n.children )
        c += offset;
      out.nodes_.push_back( std::move( n ) );
    }
  }
  return out;
}

Formula Formula::compose( Op op, const std::vector<Formula>& kids )
{
  Formula out;
  out.nodes_.clear();
  out.nodes_.push_back( Node{ op, {}, {} } );
  for ( const Formula& kid : kids )
  {
    const auto offset = static_cast<NodeId>( out.nodes_.size() );
    out.nodes_[0].children.push_back( offset );
    for ( Node n : kid.nodes_ )
    {
      for ( auto& c : n.children )
        c += offset;
      out.nodes_.push_back( std::move( n ) );
    }
  }
  return out;
}

Formula Formula::top()
{
  return Formula();
}

Formula Formula::bottom()
{
  Formula f;
  f.nodes_[0].op = Op::False;
  return f;
}

Formula Formula::atom( Activity a )
{
  if ( !a.valid() )
    throw InvalidArgument( "atom requires a valid activity" );
  Formula f;
  f.nodes_[0] = Node{ Op::Atom, a, {} };
  return f;
}

Formula Formula::make_not( const Formula& f ) { return compose( Op::Not, { &f } ); }

Formula Formula::make_and( std::vector<Formula> operands )
{
  if ( operands.empty() )
    return top();
  if ( operands.size() == 1 )
    return std::move( operands.front() );
  return compose( Op::And, operands );
}

Formula Formula::make_or( std::vector<Formula> operands )
{
  if ( operands.empty() )
    return bottom();
  if ( operands.size() == 1 )
    return std::move( operands.front() );
  return compose( Op::Or, operands );
}

Formula Formula::implies( const Formula& lhs, const Formula& rhs ) { return compose( Op::Implies, { &lhs, &rhs } ); }
Formula Formula::iff( const Formula& lhs, const Formula& rhs ) { return compose( Op::Iff, { &lhs, &rhs } ); }
Formula Formula::next( const Formula& f ) { return compose( Op::Next, { &f } ); }
Formula Formula::weak_next( const Formula& f ) { return compose( Op::WeakNext, { &f } ); }
Formula Formula::until( const Formula& lhs, const Formula& rhs ) { return compose( Op::Until, { &lhs, &rhs } ); }
Formula Formula::release( const Formula& lhs, const Formula& rhs ) { return compose( Op::Release, { &lhs, &rhs } ); }
Formula Formula::weak_until( const Formula& lhs, const Formula& rhs ) { return compose( Op::WeakUntil, { &lhs, &rhs } ); }
Formula Formula::eventually( const Formula& f ) { return compose( Op::Eventually, { &f } ); }
Formula Formula::globally( const Formula& f ) { return compose( Op::Globally, { &f } ); }

Formula Formula::subformula( NodeId id ) const
{
  // preorder: the subtree of `id` is the contiguous range up to its last descendant
  NodeId end = id;
  std::vector<NodeId> stack{ id };
  while ( !stack.empty() )
  {
    const auto n = stack.back();
    stack.pop_back();
    end = std::max( end, n );
    for ( auto c : nodes_[n].children )
      stack.push_back( c );
  }
  Formula out;
  out.nodes_.assign( nodes_.begin() + id, nodes_.begin() + end + 1 );
  for ( auto& n : out.nodes_ )
    for ( auto& c : n.children )
      c -= id;
  return out;
}

std::vector<Activity> Formula::atoms() const
{
  std::set<Activity> seen;
  for ( const auto& n : nodes_ )
    if ( n.op == Op::Atom )
      seen.insert( n.atom );
  return { seen.begin(), seen.end() };
}

Formula operator!( const Formula& f ) { return Formula::make_not( f ); }
Formula operator&&( const Formula& a, const Formula& b ) { return Formula::make_and( { a, b } ); }
Formula operator||( const Formula& a, const Formula& b ) { return Formula::make_or( { a, b } ); }

namespace
{

std::string_view fact_name( Op op )
{
  switch ( op )
  {
  case Op::True: return "true";
  case Op::False: return "false";
  case Op::Atom: return "atom";
  case Op::Not: return "negate";
  case Op::And: return "conjunction";
  case Op::Or: return "disjunction";
  case Op::Implies: return "implies";
  case Op::Iff: return "equivalence";
  case Op::Next: return "next";
  case Op::WeakNext: return "weak_next";
  case Op::Until: return "until";
  case Op::Release: return "release";
  case Op::WeakUntil: return "weak_until";
  case Op::Eventually: return "eventually";
  case Op::Globally: return "always";
  }
  return "?";
}

} // namespace

std::vector<std::string> reified_facts( const Formula& f, const std::map<Activity, std::string>& atom_names )
{
  std::vector<std::string> out;
  out.reserve( f.size() );
  for ( NodeId id = 0; id < f.size(); ++id )
  {
    const auto& n = f.node( id );
    std::string fact( fact_name( n.op ) );
    fact += '(' + std::to_string( id );
    if ( n.op == Op::Atom )
    {
      auto it = atom_names.find( n.atom );
      fact += ',';
      if ( it != atom_names.end() )
        fact += it->second;
      else
        fact += "\"" + std::string( n.atom.label() ) + "\"";
    }
    for ( auto c : n.children )
      fact += ',' + std::to_string( c );
    fact += ')';
    out.push_back( std::move( fact ) );
  }
  return out;
}

Formula template_formula( TemplateKind kind, Activity activation, Activity target )
{
  const auto a = Formula::atom( activation );
  const auto b = Formula::atom( target );
  using F = Formula;

  const auto response = [&] { return F::globally( F::implies( a, F::eventually( b ) ) ); };
  const auto precedence = [&] { return F::weak_until( !b, a ); };
  const auto alt_response = [&] { return F::globally( F::implies( a, F::next( F::until( !a, b ) ) ) ); };
  const auto alt_precedence = [&] {
    return precedence() && F::globally( F::implies( b, F::weak_next( precedence() ) ) );
  };
  const auto chain_response = [&] { return F::globally( F::implies( a, F::next( b ) ) ); };
  const auto chain_precedence = [&] { return F::globally( F::implies( F::next( b ), a ) ) && !b; };
  const auto choice = [&] { return F::eventually( a || b ); };
  const auto responded = [&]( const F& x, const F& y ) { return F::implies( F::eventually( x ), F::eventually( y ) ); };

  switch ( kind )
  {
  case TemplateKind::Choice: return choice();
  case TemplateKind::ExclusiveChoice: return choice() && !( F::eventually( a ) && F::eventually( b ) );
  case TemplateKind::RespondedExistence: return responded( a, b );
  case TemplateKind::Coexistence: return responded( a, b ) && responded( b, a );
  case TemplateKind::Response: return response();
  case TemplateKind::Precedence: return precedence();
  case TemplateKind::AlternateResponse: return alt_response();
  case TemplateKind::AlternatePrecedence: return alt_precedence();
  case TemplateKind::ChainResponse: return chain_response();
  case TemplateKind::ChainPrecedence: return chain_precedence();
  case TemplateKind::Succession: return response() && precedence();
  case TemplateKind::AlternateSuccession: return alt_response() && alt_precedence();
  case TemplateKind::ChainSuccession: return chain_response() && chain_precedence();
  }
  throw InvalidArgument( "unknown template kind" );
}

} // namespace declare::ltlf
