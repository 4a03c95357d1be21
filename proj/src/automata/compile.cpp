#include <declare/automata.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace declare::automata
{

namespace
{

using ltlf::Op;
using Id = std::uint32_t;

/// Hash-consed NNF formulas; equal structure gives equal ids.
class Pool
{
public:
  // Atom entries carry the index of their named symbol.
  struct Entry
  {
    Op op;
    std::uint32_t symbol;
    std::vector<Id> kids;
  };

  Id make( Op op, std::uint32_t symbol, std::vector<Id> kids )
  {
    auto key = std::make_tuple( op, symbol, kids );
    if ( auto it = index_.find( key ); it != index_.end() )
      return it->second;
    const auto id = static_cast<Id>( entries_.size() );
    entries_.push_back( Entry{ op, symbol, std::move( kids ) } );
    index_.emplace( std::move( key ), id );
    return id;
  }

  Id top() { return make( Op::True, 0, {} ); }
  Id bottom() { return make( Op::False, 0, {} ); }

  /// Temporal node with constant operands folded where the result is again a constant or simpler.
  Id temporal( Op op, std::vector<Id> kids )
  {
    const auto is = [&]( std::size_t k, Op c ) { return entries_[kids[k]].op == c; };
    switch ( op )
    {
    case Op::Next:
    case Op::Eventually:
      if ( is( 0, Op::False ) )
        return bottom();
      break;
    case Op::WeakNext:
    case Op::Globally:
      if ( is( 0, Op::True ) )
        return top();
      break;
    case Op::Until:
      if ( is( 1, Op::False ) )
        return bottom();
      if ( is( 0, Op::True ) )
        return temporal( Op::Eventually, { kids[1] } );
      break;
    case Op::Release:
      if ( is( 1, Op::True ) )
        return top();
      if ( is( 0, Op::False ) )
        return temporal( Op::Globally, { kids[1] } );
      break;
    case Op::WeakUntil:
      if ( is( 0, Op::True ) || is( 1, Op::True ) )
        return top();
      if ( is( 1, Op::False ) )
        return temporal( Op::Globally, { kids[0] } );
      break;
    default: break;
    }
    return make( op, 0, std::move( kids ) );
  }

  /// Flattened, sorted, deduplicated conjunction/disjunction with constant absorption.
  Id junction( Op op, const std::vector<Id>& operands )
  {
    const Id unit = op == Op::And ? top() : bottom();
    const Id zero = op == Op::And ? bottom() : top();
    std::vector<Id> flat;
    for ( auto id : operands )
    {
      const auto& e = entries_[id];
      if ( id == zero )
        return zero;
      if ( id == unit )
        continue;
      if ( e.op == op )
        flat.insert( flat.end(), e.kids.begin(), e.kids.end() );
      else
        flat.push_back( id );
    }
    std::sort( flat.begin(), flat.end() );
    flat.erase( std::unique( flat.begin(), flat.end() ), flat.end() );
    if ( complementary( flat ) )
      return zero;
    if ( flat.empty() )
      return unit;
    if ( flat.size() == 1 )
      return flat.front();
    return make( op, 0, std::move( flat ) );
  }

  /// Whether a sorted id set holds some atom together with its negation.
  bool complementary( const std::vector<Id>& sorted ) const
  {
    for ( auto id : sorted )
    {
      const auto& e = entries_[id];
      if ( e.op == Op::Not && std::binary_search( sorted.begin(), sorted.end(), e.kids[0] ) )
        return true;
    }
    return false;
  }

  const Entry& operator[]( Id id ) const { return entries_[id]; }

private:
  std::vector<Entry> entries_;
  std::map<std::tuple<Op, std::uint32_t, std::vector<Id>>, Id> index_;
};

// A residual is a disjunction of clauses; a clause is a conjunction of pool
// formulas that are neither constants nor junctions. Clauses are sorted id
// sets and the disjunction is kept sorted and free of subsumed clauses, so
// residuals range over antichains of subsets of a finite closure.
using Clause = std::vector<Id>;
using Dnf = std::vector<Clause>;

class Progression
{
public:
  explicit Progression( std::size_t named ) : symbols_( named + 1 ) {}

  Pool pool;

  Id import( const ltlf::Formula& f, ltlf::NodeId id, const std::vector<Activity>& named )
  {
    const auto& n = f.node( id );
    std::vector<Id> kids;
    for ( auto c : n.children )
      kids.push_back( import( f, c, named ) );
    switch ( n.op )
    {
    case Op::True: return pool.top();
    case Op::False: return pool.bottom();
    case Op::Atom:
    {
      const auto it = std::lower_bound( named.begin(), named.end(), n.atom );
      return pool.make( Op::Atom, static_cast<std::uint32_t>( it - named.begin() ), {} );
    }
    case Op::Not: return pool.make( Op::Not, 0, { kids[0] } );
    case Op::And:
    case Op::Or: return pool.junction( n.op, kids );
    default: return pool.temporal( n.op, std::move( kids ) );
    }
  }

  Dnf normalize( Dnf d ) const
  {
    Dnf kept;
    for ( auto& clause : d )
    {
      std::sort( clause.begin(), clause.end() );
      clause.erase( std::unique( clause.begin(), clause.end() ), clause.end() );
      if ( !pool.complementary( clause ) )
        kept.push_back( std::move( clause ) );
    }
    std::sort( kept.begin(), kept.end(), []( const Clause& x, const Clause& y ) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    } );
    kept.erase( std::unique( kept.begin(), kept.end() ), kept.end() );
    // absorption: drop every clause that contains a smaller kept clause
    Dnf out;
    for ( auto& clause : kept )
    {
      const bool subsumed = std::any_of( out.begin(), out.end(), [&]( const Clause& smaller ) {
        return std::includes( clause.begin(), clause.end(), smaller.begin(), smaller.end() );
      } );
      if ( !subsumed )
        out.push_back( std::move( clause ) );
    }
    std::sort( out.begin(), out.end() );
    return out;
  }

  static Dnf truth() { return { Clause{} }; }
  static Dnf falsity() { return {}; }

  Dnf disj( Dnf x, const Dnf& y ) const
  {
    x.insert( x.end(), y.begin(), y.end() );
    return normalize( std::move( x ) );
  }

  Dnf conj( const Dnf& x, const Dnf& y ) const
  {
    Dnf out;
    for ( const auto& cx : x )
      for ( const auto& cy : y )
      {
        Clause c = cx;
        c.insert( c.end(), cy.begin(), cy.end() );
        out.push_back( std::move( c ) );
      }
    return normalize( std::move( out ) );
  }

  Dnf lift( Id id ) const
  {
    const auto& e = pool[id];
    switch ( e.op )
    {
    case Op::True: return truth();
    case Op::False: return falsity();
    case Op::And:
    {
      auto acc = truth();
      for ( auto k : e.kids )
        acc = conj( acc, lift( k ) );
      return acc;
    }
    case Op::Or:
    {
      auto acc = falsity();
      for ( auto k : e.kids )
        acc = disj( std::move( acc ), lift( k ) );
      return acc;
    }
    default: return { Clause{ id } };
    }
  }

  bool accepts_empty( Id id ) const
  {
    const auto& e = pool[id];
    switch ( e.op )
    {
    case Op::True: return true;
    case Op::False:
    case Op::Atom: return false;
    case Op::Not: return !accepts_empty( e.kids[0] );
    case Op::And:
      return std::all_of( e.kids.begin(), e.kids.end(), [&]( Id k ) { return accepts_empty( k ); } );
    case Op::Or:
      return std::any_of( e.kids.begin(), e.kids.end(), [&]( Id k ) { return accepts_empty( k ); } );
    case Op::Next:
    case Op::Until:
    case Op::Eventually: return false;
    case Op::WeakNext:
    case Op::Release:
    case Op::Globally:
    case Op::WeakUntil: return true;
    default: throw InvalidArgument( "formula is not in negation normal form" );
    }
  }

  bool accepts_empty( const Dnf& d ) const
  {
    return std::any_of( d.begin(), d.end(), [&]( const Clause& c ) {
      return std::all_of( c.begin(), c.end(), [&]( Id e ) { return accepts_empty( e ); } );
    } );
  }

  /// Residual obligation on the rest of the trace after reading `sym`.
  Dnf progress( const Dnf& d, SymbolIndex sym )
  {
    auto out = falsity();
    for ( const auto& clause : d )
    {
      auto acc = truth();
      for ( auto e : clause )
      {
        acc = conj( acc, progress( e, sym ) );
        if ( acc.empty() )
          break;
      }
      out = disj( std::move( out ), acc );
    }
    return out;
  }

  Dnf progress( Id id, SymbolIndex sym )
  {
    const auto key = std::make_pair( id, sym );
    if ( auto it = memo_.find( key ); it != memo_.end() )
      return it->second;
    const auto e = pool[id];
    const Dnf self{ Clause{ id } };
    const auto sub = [&]( std::size_t k ) { return progress( lift( e.kids[k] ), sym ); };
    Dnf out;
    switch ( e.op )
    {
    case Op::True:
    case Op::False:
    case Op::And:
    case Op::Or: out = progress( lift( id ), sym ); break;
    case Op::Atom: out = e.symbol == sym ? truth() : falsity(); break;
    case Op::Not: out = pool[e.kids[0]].symbol == sym ? falsity() : truth(); break;
    // strong next: the operand must hold and a further position must exist (F true)
    case Op::Next: out = conj( lift( e.kids[0] ), { Clause{ pool.temporal( Op::Eventually, { pool.top() } ) } } ); break;
    // weak next: the operand holds or the trace ends here (G false)
    case Op::WeakNext: out = disj( lift( e.kids[0] ), { Clause{ pool.temporal( Op::Globally, { pool.bottom() } ) } } ); break;
    case Op::Until:
    case Op::WeakUntil: out = disj( sub( 1 ), conj( sub( 0 ), self ) ); break;
    case Op::Release: out = conj( sub( 1 ), disj( sub( 0 ), self ) ); break;
    case Op::Eventually: out = disj( sub( 0 ), self ); break;
    case Op::Globally: out = conj( sub( 0 ), self ); break;
    default: throw InvalidArgument( "formula is not in negation normal form" );
    }
    memo_.emplace( key, out );
    return out;
  }

  std::size_t symbols() const { return symbols_; }

private:
  std::size_t symbols_;
  std::map<std::pair<Id, SymbolIndex>, Dnf> memo_;
};

} // namespace

Dfa compile( const ltlf::Formula& f, const CompileOptions& options )
{
  const auto normal = ltlf::nnf( f );
  const auto named = normal.atoms();
  Progression prog( named.size() );
  const auto start = prog.lift( prog.import( normal, normal.root(), named ) );

  std::map<Dnf, StateId> state_of;
  std::vector<const Dnf*> residuals;
  std::deque<const Dnf*> queue;
  const auto intern = [&]( Dnf r ) {
    if ( auto it = state_of.find( r ); it != state_of.end() )
      return it->second;
    if ( residuals.size() >= options.max_states )
      throw StateBudgetExceeded( "automaton construction exceeded the budget of " + std::to_string( options.max_states ) +
                                 " states" );
    const auto id = static_cast<StateId>( residuals.size() );
    auto it = state_of.emplace( std::move( r ), id ).first;
    residuals.push_back( &it->first );
    queue.push_back( &it->first );
    return id;
  };

  intern( start );
  std::vector<StateId> transitions;
  while ( !queue.empty() )
  {
    const auto* r = queue.front();
    queue.pop_front();
    // states are discovered in queue order, so rows are appended in state order
    for ( SymbolIndex sym = 0; sym < prog.symbols(); ++sym )
      transitions.push_back( intern( prog.progress( *r, sym ) ) );
  }

  std::vector<bool> accepting;
  for ( const auto* r : residuals )
    accepting.push_back( prog.accepts_empty( *r ) );
  return Dfa( named, residuals.size(), std::move( transitions ), 0, std::move( accepting ) );
}

Dfa constraint_dfa( TemplateKind kind, Activity activation, Activity target )
{
  return minimize( compile( ltlf::template_formula( kind, activation, target ) ) );
}

} // namespace declare::automata
