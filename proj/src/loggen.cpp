#include <declare/loggen.hpp>
#include <declare/parallel.hpp>
#include <declare/seed.hpp>

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <map>
#include <random>

namespace declare::loggen
{

using automata::Dfa;
using automata::StateId;
using automata::SymbolIndex;

PathCountTable::PathCountTable( const Dfa& dfa, std::size_t alphabet_size, std::size_t max_length )
    : states_( dfa.state_count() ), max_length_( max_length )
{
  const auto named = dfa.named().size();
  if ( alphabet_size < named )
    throw InvalidArgument( "alphabet of size " + std::to_string( alphabet_size ) + " cannot hold " +
                           std::to_string( named ) + " named activities" );
  weights_.assign( named, 1 );
  weights_.push_back( alphabet_size - named );

  counts_.resize( states_ * ( max_length + 1 ) );
  for ( StateId s = 0; s < states_; ++s )
    counts_[s] = dfa.accepting( s ) ? 1 : 0;
  for ( std::size_t len = 1; len <= max_length; ++len )
  {
    const auto* prev = &counts_[( len - 1 ) * states_];
    auto* cur = &counts_[len * states_];
    for ( StateId s = 0; s < states_; ++s )
      for ( SymbolIndex sym = 0; sym < dfa.symbol_count(); ++sym )
        if ( weights_[sym] != 0 )
          cur[s] += weights_[sym] * prev[dfa.next( s, sym )];
  }
}

const Count& PathCountTable::count( StateId s, std::size_t remaining ) const
{
  if ( s >= states_ || remaining > max_length_ )
    throw InvalidArgument( "path count lookup out of range" );
  return counts_[remaining * states_ + s];
}

std::uint64_t PathCountTable::weight( SymbolIndex sym ) const
{
  return weights_.at( sym );
}

Dfa build_generator( const Constraint& c, std::size_t alphabet_size, bool positive )
{
  if ( alphabet_size < 2 )
    throw InvalidArgument( "generator alphabet needs at least two activities" );
  auto base = automata::constraint_dfa( c );
  if ( !positive )
    base = base.complement();

  std::vector<Activity> named( base.named().begin(), base.named().end() );
  for ( auto a : { c.activation, c.target } )
    if ( std::find( named.begin(), named.end(), a ) == named.end() )
      named.push_back( a );
  std::sort( named.begin(), named.end() );
  if ( named.size() > alphabet_size )
    throw InvalidArgument( "alphabet of size " + std::to_string( alphabet_size ) + " cannot hold " +
                           std::to_string( named.size() ) + " named activities" );

  const auto symbols = named.size() + 1;
  std::vector<SymbolIndex> base_symbol( symbols );
  std::vector<unsigned> seen_bits( symbols, 0 );
  for ( std::size_t sym = 0; sym < symbols; ++sym )
  {
    if ( sym == named.size() )
    {
      base_symbol[sym] = base.other_symbol();
      continue;
    }
    base_symbol[sym] = base.classify( named[sym] );
    seen_bits[sym] = ( named[sym] == c.activation ? 1u : 0u ) | ( named[sym] == c.target ? 2u : 0u );
  }

  // product states are (base state, occurrence bits), numbered in discovery order
  std::map<std::pair<StateId, unsigned>, StateId> ids;
  std::vector<std::pair<StateId, unsigned>> states;
  const auto intern = [&]( std::pair<StateId, unsigned> key ) {
    const auto [it, fresh] = ids.emplace( key, static_cast<StateId>( states.size() ) );
    if ( fresh )
      states.push_back( key );
    return it->second;
  };
  intern( { base.initial(), 0u } );
  std::vector<StateId> transitions;
  for ( std::size_t i = 0; i < states.size(); ++i )
    for ( std::size_t sym = 0; sym < symbols; ++sym )
    {
      const auto [s, bits] = states[i];
      transitions.push_back( intern( { base.next( s, base_symbol[sym] ), bits | seen_bits[sym] } ) );
    }
  std::vector<bool> accepting;
  for ( const auto& [s, bits] : states )
    accepting.push_back( base.accepting( s ) && bits == 3u );
  return automata::minimize( Dfa( std::move( named ), states.size(), std::move( transitions ), 0, std::move( accepting ) ) );
}

Sampler::Sampler( Dfa generator, std::vector<Activity> alphabet, std::size_t length )
    : dfa_( std::move( generator ) ), alphabet_( std::move( alphabet ) ), length_( length ),
      table_( dfa_, alphabet_.size(), length )
{
  auto sorted = alphabet_;
  std::sort( sorted.begin(), sorted.end() );
  if ( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() )
    throw InvalidArgument( "sampling alphabet lists an activity twice" );
  for ( auto a : dfa_.named() )
    if ( !std::binary_search( sorted.begin(), sorted.end(), a ) )
      throw InvalidArgument( "sampling alphabet lacks " + std::string( a.label() ) );
  for ( auto a : alphabet_ )
    if ( dfa_.classify( a ) == dfa_.other_symbol() )
      others_.push_back( a );
}

const Count& Sampler::language_size() const
{
  return table_.count( dfa_.initial(), length_ );
}

Trace Sampler::sample( TraceId id, std::uint64_t seed ) const
{
  const auto& total = language_size();
  if ( total == 0 )
    throw EmptyLanguage( "no trace of length " + std::to_string( length_ ) + " is accepted" );

  // One uniform rank in [0, total) decoded symbol by symbol. The trace with
  // rank r is found by skipping whole blocks of completions per symbol class.
  std::mt19937_64 rng( seed );
  Count rank = boost::random::uniform_int_distribution<Count>( 0, total - 1 )( rng );

  std::vector<Activity> events;
  events.reserve( length_ );
  StateId s = dfa_.initial();
  for ( std::size_t pos = 0; pos < length_; ++pos )
  {
    const auto remaining = length_ - pos - 1;
    for ( SymbolIndex sym = 0; sym < dfa_.symbol_count(); ++sym )
    {
      const auto w = table_.weight( sym );
      const auto next = dfa_.next( s, sym );
      const auto& completions = table_.count( next, remaining );
      if ( w == 0 || completions == 0 )
        continue;
      const Count block = completions * w;
      if ( rank >= block )
      {
        rank -= block;
        continue;
      }
      const auto member = static_cast<std::size_t>( rank / completions );
      rank %= completions;
      events.push_back( sym == dfa_.other_symbol() ? others_[member] : dfa_.named()[sym] );
      s = next;
      break;
    }
  }
  return Trace( id, std::move( events ) );
}

std::vector<Activity> generated_alphabet( std::size_t k )
{
  std::vector<Activity> out;
  for ( std::size_t i = 0; i < k; ++i )
    out.push_back( Activity::intern( "a_" + std::to_string( i ) ) );
  return out;
}

GeneratedLog generate_log( const Constraint& c, std::size_t n_traces, std::size_t length, std::size_t k,
                           std::uint64_t seed, const GenerateOptions& options )
{
  if ( n_traces % 2 != 0 )
    throw InvalidArgument( "the number of traces must be even, got " + std::to_string( n_traces ) );
  const auto alphabet = generated_alphabet( k );
  for ( auto a : { c.activation, c.target } )
    if ( std::find( alphabet.begin(), alphabet.end(), a ) == alphabet.end() )
      throw InvalidArgument( "activity " + std::string( a.label() ) + " is not among a_0..a_" + std::to_string( k - 1 ) );

  const Sampler positive( build_generator( c, k, true ), alphabet, length );
  const Sampler negative( build_generator( c, k, false ), alphabet, length );
  if ( n_traces > 0 )
  {
    if ( positive.language_size() == 0 )
      throw EmptyLanguage( "no positive trace of length " + std::to_string( length ) + " exists for " + to_string( c ) );
    if ( negative.language_size() == 0 )
      throw EmptyLanguage( "no negative trace of length " + std::to_string( length ) + " exists for " + to_string( c ) );
  }

  std::vector<Trace> traces( n_traces );
  const auto half = n_traces / 2;
  parallel_for( n_traces, options.threads, [&]( std::size_t i ) {
    traces[i] = ( i < half ? positive : negative ).sample( i, stream_seed( seed, i ) );
  } );
  GeneratedLog out{ EventLog( std::move( traces ) ), std::vector<bool>( n_traces, false ) };
  std::fill( out.positive.begin(), out.positive.begin() + static_cast<std::ptrdiff_t>( half ), true );
  return out;
}

std::string write_manifest( const GeneratedLog& g )
{
  std::string out = "trace_id,label\n";
  for ( std::size_t i = 0; i < g.positive.size(); ++i )
    out += std::to_string( g.log[i].id() ) + ( g.positive[i] ? ",positive\n" : ",negative\n" );
  return out;
}

} // namespace declare::loggen
