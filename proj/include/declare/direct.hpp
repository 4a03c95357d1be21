#pragma once

#include <declare/core.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace declare::direct
{

/// Sorted occurrence positions of every activity in one trace.
class TraceIndex
{
public:
  explicit TraceIndex( const Trace& trace );
  /// Indexes only `focus` (ascending ids, no duplicates); other activities report no positions.
  TraceIndex( const Trace& trace, std::span<const Activity> focus );

  /// Re-targets the index at another trace, keeping allocated storage.
  void assign( const Trace& trace, std::span<const Activity> focus );

  const Trace& trace() const noexcept { return *trace_; }
  std::span<const std::uint32_t> positions( Activity a ) const;
  bool occurs( Activity a ) const { return !positions( a ).empty(); }

private:
  const Trace* trace_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges_;  // (activity id, begin offset), sorted by id
  std::vector<std::uint32_t> positions_;
};

enum class Reason : std::uint8_t
{
  NoLaterTarget,          // activation never followed by the target
  TargetBeforeActivation, // target before the first activation
  TargetWithoutActivation,
  NoTargetBeforeNextActivation,
  RepeatedTarget,         // two targets with no activation in between
  NoImmediateTarget,
  NoImmediateActivation,
  TargetAtStart,
  TargetAtEnd,            // compatibility rule for AlternateSuccession
  NeitherOccurs,
  BothOccur,
  ActivationWithoutTarget,
};

std::string_view to_string( Reason r );

struct Failure
{
  /// Empty for conditions about the whole trace.
  std::optional<std::uint32_t> position;
  Reason reason;

  friend bool operator==( const Failure&, const Failure& ) = default;
};

struct DirectVerdict
{
  bool sat = true;
  std::vector<Failure> failures;
  /// Obliged position -> position discharging it.
  std::map<std::uint32_t, std::uint32_t> witnesses;
};

struct DirectOptions
{
  /// Also fail AlternateSuccession when the trace ends with the target.
  bool alternate_succession_last_target_rule = false;
};

struct DirectStats
{
  /// Occurrence-list entries and trace positions visited.
  std::uint64_t steps = 0;
};

DirectVerdict check_direct( const Constraint& c, const TraceIndex& index, const DirectOptions& options = {},
                            DirectStats* stats = nullptr );
DirectVerdict check_direct( const Constraint& c, const Trace& trace, const DirectOptions& options = {} );

/// Verdict of check_direct without recording failures or witnesses.
bool holds_direct( const Constraint& c, const TraceIndex& index, const DirectOptions& options = {} );

} // namespace declare::direct
