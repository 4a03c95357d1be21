#pragma once

#include <declare/automata.hpp>
#include <declare/core.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace declare::loggen
{

using Count = boost::multiprecision::cpp_int;

/// Raised when no trace of the requested polarity and length exists.
class EmptyLanguage : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

/*! \brief Number of accepted completions per (state, remaining length).
 *
 * Every named symbol class stands for one activity and the wildcard class for
 * the `alphabet_size - named` activities that are not named.
 */
class PathCountTable
{
public:
  PathCountTable( const automata::Dfa& dfa, std::size_t alphabet_size, std::size_t max_length );

  const Count& count( automata::StateId s, std::size_t remaining ) const;
  /// Activities represented by a symbol class.
  std::uint64_t weight( automata::SymbolIndex sym ) const;
  std::size_t max_length() const noexcept { return max_length_; }

private:
  std::size_t states_;
  std::vector<std::uint64_t> weights_;
  std::size_t max_length_;
  std::vector<Count> counts_;
};

/*! \brief Automaton accepting the traces of one polarity that use both constraint activities.
 *
 * The constraint automaton (complemented when `positive` is false) is
 * intersected with automata requiring at least one activation and at least
 * one target. Requires `alphabet_size >= 2`.
 */
automata::Dfa build_generator( const Constraint& c, std::size_t alphabet_size, bool positive );

/*! \brief Samples traces of one length uniformly from a generator's language.
 *
 * `alphabet` lists the concrete activities and must contain every named
 * activity of the generator. sample() throws EmptyLanguage when the language is
 * empty at that length.
 */
class Sampler
{
public:
  Sampler( automata::Dfa generator, std::vector<Activity> alphabet, std::size_t length );

  /// Number of traces in the language at the sampler's length.
  const Count& language_size() const;
  /// Deterministic in `seed`.
  Trace sample( TraceId id, std::uint64_t seed ) const;

private:
  automata::Dfa dfa_;
  std::vector<Activity> alphabet_;
  /// Concrete activities of the wildcard class, in alphabet order.
  std::vector<Activity> others_;
  std::size_t length_;
  PathCountTable table_;
};

/// "a_0" .. "a_{k-1}".
std::vector<Activity> generated_alphabet( std::size_t k );

struct GeneratedLog
{
  EventLog log;
  /// Indexed by trace id.
  std::vector<bool> positive;
};

struct GenerateOptions
{
  unsigned threads = 0;
};

/*! \brief n/2 positive traces (ids 0..n/2-1) followed by n/2 negative ones.
 *
 * Both constraint activities must belong to generated_alphabet(k). Trace i
 * is sampled with seed stream_seed(seed, i).
 */
GeneratedLog generate_log( const Constraint& c, std::size_t n_traces, std::size_t length, std::size_t k,
                           std::uint64_t seed, const GenerateOptions& options = {} );

/// "trace_id,label" rows with label positive or negative.
std::string write_manifest( const GeneratedLog& g );

} // namespace declare::loggen
