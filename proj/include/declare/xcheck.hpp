#pragma once

#include <declare/automata.hpp>
#include <declare/core.hpp>
#include <declare/direct.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace declare::xcheck
{

/// Verdict of every backend on one trace, indexed by Backend.
using Verdicts = std::array<bool, 3>;

struct Disagreement
{
  TemplateKind kind;
  Trace trace;
  Verdicts verdicts;

  friend bool operator==( const Disagreement&, const Disagreement& ) = default;
};

struct CheckResult
{
  std::uint64_t traces = 0;
  /// Ordered by trace (shortest first, then lexicographic), then template.
  std::vector<Disagreement> disagreements;
};

struct Options
{
  unsigned threads = 0;
  direct::DirectOptions direct;
  /// Replaces the automaton of a constraint, for mutation testing.
  std::function<automata::Dfa( const Constraint& )> automaton;
};

/// Activation "a", target "b" and the extra activity "c".
std::array<Activity, 3> alphabet();

/// Every trace over alphabet() of length 0..max_len, each kind instantiated as kind(a, b).
CheckResult exhaustive_check( std::span<const TemplateKind> kinds, std::size_t max_len, const Options& options = {} );

/// Sample i draws a length uniformly from 0..max_len and then each event uniformly, seeded by stream_seed(seed, i).
CheckResult random_check( std::span<const TemplateKind> kinds, std::uint64_t n_samples, std::size_t max_len,
                          std::uint64_t seed, const Options& options = {} );

/// Factlog lines replaying the trace as trace 0; a comment line for the empty trace.
std::string replay_facts( const Disagreement& d );

/// {"traces", "disagreements": [{"template", "trace", "direct", "tree", "dfa", "facts"}]}.
std::string to_json( const CheckResult& r );

} // namespace declare::xcheck
