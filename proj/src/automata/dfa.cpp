#include <declare/automata.hpp>

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace declare::automata
{

Dfa::Dfa( std::vector<Activity> named, std::size_t states, std::vector<StateId> transitions, StateId initial,
          std::vector<bool> accepting )
    : named_( std::move( named ) ), states_( states ), transitions_( std::move( transitions ) ), initial_( initial ),
      accepting_( std::move( accepting ) )
{
  if ( states_ == 0 )
    throw InvalidArgument( "automaton needs at least one state" );
  if ( transitions_.size() != states_ * symbol_count() )
    throw InvalidArgument( "transition table is not total" );
  if ( accepting_.size() != states_ || initial_ >= states_ )
    throw InvalidArgument( "initial or accepting states out of range" );
  for ( auto t : transitions_ )
    if ( t >= states_ )
      throw InvalidArgument( "transition target out of range" );
}

SymbolIndex Dfa::classify( Activity a ) const
{
  for ( std::size_t i = 0; i < named_.size(); ++i )
    if ( named_[i] == a )
      return static_cast<SymbolIndex>( i );
  return other_symbol();
}

Dfa Dfa::complement() const
{
  auto acc = accepting_;
  acc.flip();
  return Dfa( named_, states_, transitions_, initial_, std::move( acc ) );
}

Dfa Dfa::with_accepting_flipped( StateId s ) const
{
  auto acc = accepting_;
  acc.at( s ) = !acc.at( s );
  return Dfa( named_, states_, transitions_, initial_, std::move( acc ) );
}

bool run( const Dfa& d, const Trace& trace )
{
  StateId s = d.initial();
  for ( auto a : trace.events() )
    s = d.next( s, d.classify( a ) );
  return d.accepting( s );
}

Dfa minimize( const Dfa& d )
{
  const auto symbols = d.symbol_count();

  // reachable states in breadth-first order
  std::vector<StateId> order;
  std::vector<bool> seen( d.state_count(), false );
  std::deque<StateId> queue{ d.initial() };
  seen[d.initial()] = true;
  while ( !queue.empty() )
  {
    const auto s = queue.front();
    queue.pop_front();
    order.push_back( s );
    for ( SymbolIndex a = 0; a < symbols; ++a )
    {
      const auto t = d.next( s, a );
      if ( !seen[t] )
      {
        seen[t] = true;
        queue.push_back( t );
      }
    }
  }

  // Moore refinement: block(s) <- (block(s), block(next(s, a)) for all a)
  std::vector<std::uint32_t> block( d.state_count(), 0 );
  for ( auto s : order )
    block[s] = d.accepting( s ) ? 1 : 0;
  std::size_t blocks = 0;
  for ( ;; )
  {
    std::map<std::vector<std::uint32_t>, std::uint32_t> signatures;
    std::vector<std::uint32_t> refined( d.state_count(), 0 );
    for ( auto s : order )
    {
      std::vector<std::uint32_t> sig{ block[s] };
      for ( SymbolIndex a = 0; a < symbols; ++a )
        sig.push_back( block[d.next( s, a )] );
      auto [it, fresh] = signatures.emplace( std::move( sig ), static_cast<std::uint32_t>( signatures.size() ) );
      refined[s] = it->second;
    }
    block = std::move( refined );
    if ( signatures.size() == blocks )
      break;
    blocks = signatures.size();
  }

  std::vector<StateId> representative( blocks, 0 );
  std::vector<bool> has_rep( blocks, false );
  for ( auto s : order )
    if ( !has_rep[block[s]] )
    {
      has_rep[block[s]] = true;
      representative[block[s]] = s;
    }

  // number the quotient breadth-first from the initial block
  std::vector<std::int64_t> quotient_id( blocks, -1 );
  std::vector<std::uint32_t> bfs{ block[d.initial()] };
  quotient_id[block[d.initial()]] = 0;
  for ( std::size_t i = 0; i < bfs.size(); ++i )
  {
    const auto rep = representative[bfs[i]];
    for ( SymbolIndex a = 0; a < symbols; ++a )
    {
      const auto b = block[d.next( rep, a )];
      if ( quotient_id[b] < 0 )
      {
        quotient_id[b] = static_cast<std::int64_t>( bfs.size() );
        bfs.push_back( b );
      }
    }
  }

  std::vector<StateId> transitions( bfs.size() * symbols );
  std::vector<bool> accepting( bfs.size() );
  for ( std::size_t q = 0; q < bfs.size(); ++q )
  {
    const auto rep = representative[bfs[q]];
    accepting[q] = d.accepting( rep );
    for ( SymbolIndex a = 0; a < symbols; ++a )
      transitions[q * symbols + a] = static_cast<StateId>( quotient_id[block[d.next( rep, a )]] );
  }
  return Dfa( { d.named().begin(), d.named().end() }, bfs.size(), std::move( transitions ), 0, std::move( accepting ) );
}

SymbolNames argument_names( Activity activation, Activity target )
{
  SymbolNames names;
  names.emplace( activation, "arg_0" );
  names.emplace( target, "arg_1" );
  return names;
}

namespace
{

std::string symbol_name( const Dfa& d, SymbolIndex sym, const SymbolNames& names )
{
  if ( sym == d.other_symbol() )
    return std::string( wildcard_label );
  const auto a = d.named()[sym];
  if ( auto it = names.find( a ); it != names.end() )
    return it->second;
  return std::string( a.label() );
}

} // namespace

std::string to_facts_json( const Dfa& d, std::string_view kind, const SymbolNames& names )
{
  nlohmann::ordered_json j;
  j["kind"] = std::string( kind );
  j["initial"] = d.initial();
  auto accepting = nlohmann::json::array();
  for ( StateId s = 0; s < d.state_count(); ++s )
    if ( d.accepting( s ) )
      accepting.push_back( s );
  j["accepting"] = accepting;
  auto transitions = nlohmann::json::array();
  for ( StateId s = 0; s < d.state_count(); ++s )
    for ( SymbolIndex a = 0; a < d.symbol_count(); ++a )
      transitions.push_back( nlohmann::json::array( { s, symbol_name( d, a, names ), d.next( s, a ) } ) );
  j["transitions"] = transitions;
  return j.dump( 2 ) + "\n";
}

std::string to_facts( const Dfa& d, std::string_view kind, const SymbolNames& names )
{
  std::ostringstream out;
  const auto quoted_kind = "\"" + std::string( kind ) + "\"";
  for ( StateId s = 0; s < d.state_count(); ++s )
  {
    for ( SymbolIndex a = 0; a < d.symbol_count(); ++a )
    {
      auto sym = symbol_name( d, a, names );
      if ( a == d.other_symbol() || !names.contains( d.named()[a] ) )
        sym = "\"" + sym + "\"";
      out << "template(" << quoted_kind << "," << s << "," << sym << "," << d.next( s, a ) << ").\n";
    }
  }
  for ( StateId s = 0; s < d.state_count(); ++s )
    if ( d.accepting( s ) )
      out << "accepting(" << quoted_kind << "," << s << ").\n";
  out << "initial(" << quoted_kind << "," << d.initial() << ").\n";
  return out.str();
}

std::string to_dot( const Dfa& d, std::string_view name, const SymbolNames& names )
{
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  init [shape=point];\n";
  for ( StateId s = 0; s < d.state_count(); ++s )
    out << "  " << s << " [shape=" << ( d.accepting( s ) ? "doublecircle" : "circle" ) << "];\n";
  out << "  init -> " << d.initial() << ";\n";
  for ( StateId s = 0; s < d.state_count(); ++s )
  {
    // merge parallel edges into one comma-separated label
    std::map<StateId, std::string> edges;
    for ( SymbolIndex a = 0; a < d.symbol_count(); ++a )
    {
      auto& label = edges[d.next( s, a )];
      if ( !label.empty() )
        label += ",";
      label += symbol_name( d, a, names );
    }
    for ( const auto& [to, label] : edges )
      out << "  " << s << " -> " << to << " [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace declare::automata
