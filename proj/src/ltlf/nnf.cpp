#include <declare/ltlf.hpp>

namespace declare::ltlf
{

namespace
{

Formula convert( const Formula& f, NodeId id, bool negated )
{
  const auto& n = f.node( id );
  const auto pos = [&]( std::size_t i ) { return convert( f, n.children[i], false ); };
  const auto neg = [&]( std::size_t i ) { return convert( f, n.children[i], true ); };
  const auto all = [&]( bool negate_kids ) {
    std::vector<Formula> out;
    for ( auto c : n.children )
      out.push_back( convert( f, c, negate_kids ) );
    return out;
  };

  if ( !negated )
  {
    switch ( n.op )
    {
    case Op::True: return Formula::top();
    case Op::False: return Formula::bottom();
    case Op::Atom: return Formula::atom( n.atom );
    case Op::Not: return neg( 0 );
    case Op::And: return Formula::make_and( all( false ) );
    case Op::Or: return Formula::make_or( all( false ) );
    case Op::Implies: return neg( 0 ) || pos( 1 );
    case Op::Iff: return ( neg( 0 ) || pos( 1 ) ) && ( pos( 0 ) || neg( 1 ) );
    case Op::Next: return Formula::next( pos( 0 ) );
    case Op::WeakNext: return Formula::weak_next( pos( 0 ) );
    case Op::Until: return Formula::until( pos( 0 ), pos( 1 ) );
    case Op::Release: return Formula::release( pos( 0 ), pos( 1 ) );
    case Op::WeakUntil: return Formula::weak_until( pos( 0 ), pos( 1 ) );
    case Op::Eventually: return Formula::eventually( pos( 0 ) );
    case Op::Globally: return Formula::globally( pos( 0 ) );
    }
  }
  else
  {
    switch ( n.op )
    {
    case Op::True: return Formula::bottom();
    case Op::False: return Formula::top();
    case Op::Atom: return !Formula::atom( n.atom );
    case Op::Not: return pos( 0 );
    case Op::And: return Formula::make_or( all( true ) );
    case Op::Or: return Formula::make_and( all( true ) );
    case Op::Implies: return pos( 0 ) && neg( 1 );
    case Op::Iff: return ( pos( 0 ) && neg( 1 ) ) || ( neg( 0 ) && pos( 1 ) );
    case Op::Next: return Formula::weak_next( neg( 0 ) );
    case Op::WeakNext: return Formula::next( neg( 0 ) );
    case Op::Until: return Formula::release( neg( 0 ), neg( 1 ) );
    case Op::Release: return Formula::until( neg( 0 ), neg( 1 ) );
    // !(p W q) == !q U (!p & !q)
    case Op::WeakUntil: return Formula::until( neg( 1 ), neg( 0 ) && neg( 1 ) );
    case Op::Eventually: return Formula::globally( neg( 0 ) );
    case Op::Globally: return Formula::eventually( neg( 0 ) );
    }
  }
  throw InvalidArgument( "unknown operator" );
}

} // namespace

Formula nnf( const Formula& f )
{
  return convert( f, f.root(), false );
}

bool is_nnf( const Formula& f )
{
  for ( const auto& n : f.nodes() )
  {
    if ( n.op == Op::Implies || n.op == Op::Iff )
      return false;
    if ( n.op == Op::Not && f.node( n.children[0] ).op != Op::Atom )
      return false;
  }
  return true;
}

} // namespace declare::ltlf
