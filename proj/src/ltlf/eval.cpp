#include <declare/ltlf.hpp>

#include <algorithm>

namespace declare::ltlf
{

namespace
{

// stands for "this node" in the lookahead callback of step()
constexpr NodeId self_marker = 0xffffffffu;

bool ev_empty_node( const Formula& f, NodeId id )
{
  const auto& n = f.node( id );
  const auto kid = [&]( std::size_t i ) { return ev_empty_node( f, n.children[i] ); };
  switch ( n.op )
  {
  case Op::True: return true;
  case Op::False: return false;
  case Op::Atom: return false;
  case Op::Not: return !kid( 0 );
  case Op::And:
    return std::all_of( n.children.begin(), n.children.end(), [&]( NodeId c ) { return ev_empty_node( f, c ); } );
  case Op::Or:
    return std::any_of( n.children.begin(), n.children.end(), [&]( NodeId c ) { return ev_empty_node( f, c ); } );
  case Op::Implies: return !kid( 0 ) || kid( 1 );
  case Op::Iff: return kid( 0 ) == kid( 1 );
  case Op::Next: return false;
  case Op::WeakNext: return true;
  case Op::Until: return false;
  case Op::Eventually: return false;
  case Op::Release: return true;
  case Op::Globally: return true;
  case Op::WeakUntil: return true;
  }
  return false;
}

// Value of node `id` at position `t`, given `here(child)` = child at t and
// `later(id)` = id at t + 1 (only consulted when t + 1 < n).
template <typename Here, typename Later>
bool step( const Node& n, Activity event, bool has_next, Here here, Later later )
{
  switch ( n.op )
  {
  case Op::True: return true;
  case Op::False: return false;
  case Op::Atom: return n.atom == event;
  case Op::Not: return !here( n.children[0] );
  case Op::And:
    return std::all_of( n.children.begin(), n.children.end(), here );
  case Op::Or:
    return std::any_of( n.children.begin(), n.children.end(), here );
  case Op::Implies: return !here( n.children[0] ) || here( n.children[1] );
  case Op::Iff: return here( n.children[0] ) == here( n.children[1] );
  case Op::Next: return has_next && later( n.children[0] );
  case Op::WeakNext: return !has_next || later( n.children[0] );
  case Op::Until:
    return here( n.children[1] ) || ( here( n.children[0] ) && has_next && later( self_marker ) );
  case Op::Release:
    return here( n.children[1] ) && ( here( n.children[0] ) || !has_next || later( self_marker ) );
  case Op::WeakUntil:
    return here( n.children[1] ) || ( here( n.children[0] ) && ( !has_next || later( self_marker ) ) );
  case Op::Eventually: return here( n.children[0] ) || ( has_next && later( self_marker ) );
  case Op::Globally: return here( n.children[0] ) && ( !has_next || later( self_marker ) );
  }
  return false;
}

} // namespace

bool ev_empty( const Formula& f )
{
  return ev_empty_node( f, f.root() );
}

EvalTable::EvalTable( std::size_t nodes, std::size_t positions )
    : nodes_( nodes ), positions_( positions ), bits_( nodes * positions, 0 )
{
}

EvalTable eval_table( const Formula& f, const Trace& trace, EvalStats* stats )
{
  const auto n = trace.size();
  EvalTable table( f.size(), n );
  for ( std::size_t t = n; t-- > 0; )
  {
    const bool has_next = t + 1 < n;
    for ( NodeId id = static_cast<NodeId>( f.size() ); id-- > 0; )
    {
      const auto here = [&]( NodeId c ) { return table.at( c, t ); };
      const auto later = [&]( NodeId c ) { return table.at( c == self_marker ? id : c, t + 1 ); };
      table.set( id, t, step( f.node( id ), trace[t], has_next, here, later ) );
      if ( stats )
        ++stats->table_fills;
    }
  }
  return table;
}

bool eval_tree( const Formula& f, const Trace& trace, EvalStats* stats )
{
  if ( trace.empty() )
    return ev_empty( f );
  // two rolling rows: position t and t + 1
  const auto size = f.size();
  std::vector<std::uint8_t> cur( size ), nxt( size );
  for ( std::size_t t = trace.size(); t-- > 0; )
  {
    const bool has_next = t + 1 < trace.size();
    for ( NodeId id = static_cast<NodeId>( size ); id-- > 0; )
    {
      const auto here = [&]( NodeId c ) { return cur[c] != 0; };
      const auto later = [&]( NodeId c ) { return nxt[c == self_marker ? id : c] != 0; };
      cur[id] = step( f.node( id ), trace[t], has_next, here, later ) ? 1 : 0;
      if ( stats )
        ++stats->table_fills;
    }
    std::swap( cur, nxt );
  }
  return nxt[f.root()] != 0;
}

} // namespace declare::ltlf
