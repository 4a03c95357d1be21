#include <declare/direct.hpp>

#include <algorithm>
#include <utility>

namespace declare::direct
{

namespace
{

/// Per-activity counters indexed by interned id; every user leaves them zeroed.
thread_local std::vector<std::uint32_t> scratch;

} // namespace

TraceIndex::TraceIndex( const Trace& trace ) : trace_( &trace )
{
  // counting sort keyed by interned id
  auto& slot = scratch;
  for ( auto a : trace.events() )
  {
    if ( a.id() >= slot.size() )
      slot.resize( a.id() + 1, 0 );
    if ( slot[a.id()]++ == 0 )
      ranges_.emplace_back( a.id(), 0 );
  }
  std::sort( ranges_.begin(), ranges_.end() );
  std::uint32_t offset = 0;
  for ( auto& [id, begin] : ranges_ )
  {
    begin = offset;
    offset += std::exchange( slot[id], offset );
  }
  positions_.resize( trace.size() );
  for ( std::size_t pos = 0; pos < trace.size(); ++pos )
    positions_[slot[trace[pos].id()]++] = static_cast<std::uint32_t>( pos );
  for ( const auto& r : ranges_ )
    slot[r.first] = 0;
}

TraceIndex::TraceIndex( const Trace& trace, std::span<const Activity> focus )
{
  assign( trace, focus );
}

void TraceIndex::assign( const Trace& trace, std::span<const Activity> focus )
{
  trace_ = &trace;
  ranges_.clear();
  auto& slot = scratch;
  // slot holds 1 + count for focused ids and 0 for the rest
  for ( auto a : focus )
  {
    if ( a.id() >= slot.size() )
      slot.resize( a.id() + 1, 0 );
    slot[a.id()] = 1;
  }
  std::uint32_t total = 0;
  for ( auto a : trace.events() )
    if ( a.id() < slot.size() && slot[a.id()] != 0 )
    {
      ++slot[a.id()];
      ++total;
    }
  ranges_.reserve( focus.size() );
  std::uint32_t offset = 0;
  for ( auto a : focus )
  {
    const auto n = slot[a.id()] - 1;
    if ( n == 0 )
      continue;
    ranges_.emplace_back( a.id(), offset );
    slot[a.id()] = offset + 1;
    offset += n;
  }
  positions_.resize( total );
  for ( std::size_t pos = 0; pos < trace.size(); ++pos )
  {
    const auto id = trace[pos].id();
    if ( id < slot.size() && slot[id] != 0 )
      positions_[slot[id]++ - 1] = static_cast<std::uint32_t>( pos );
  }
  for ( auto a : focus )
    slot[a.id()] = 0;
}

std::span<const std::uint32_t> TraceIndex::positions( Activity a ) const
{
  auto it = std::lower_bound( ranges_.begin(), ranges_.end(), a.id(),
                              []( const auto& r, std::uint32_t id ) { return r.first < id; } );
  if ( it == ranges_.end() || it->first != a.id() )
    return {};
  const auto begin = it->second;
  const auto end = std::next( it ) == ranges_.end() ? positions_.size() : std::next( it )->second;
  return std::span<const std::uint32_t>( positions_ ).subspan( begin, end - begin );
}

std::string_view to_string( Reason r )
{
  switch ( r )
  {
  case Reason::NoLaterTarget: return "no-later-target";
  case Reason::TargetBeforeActivation: return "target-before-activation";
  case Reason::TargetWithoutActivation: return "target-without-activation";
  case Reason::NoTargetBeforeNextActivation: return "no-target-before-next-activation";
  case Reason::RepeatedTarget: return "repeated-target";
  case Reason::NoImmediateTarget: return "no-immediate-target";
  case Reason::NoImmediateActivation: return "no-immediate-activation";
  case Reason::TargetAtStart: return "target-at-start";
  case Reason::TargetAtEnd: return "target-at-end";
  case Reason::NeitherOccurs: return "neither-occurs";
  case Reason::BothOccur: return "both-occur";
  case Reason::ActivationWithoutTarget: return "activation-without-target";
  }
  return "?";
}

namespace
{

using Positions = std::span<const std::uint32_t>;

class Scan
{
public:
  /// Without `out` only the verdict is tracked.
  Scan( const TraceIndex& index, Activity act, Activity tgt, DirectVerdict* out, DirectStats* stats )
      : trace_( index.trace() ), act_( act ), tgt_( tgt ), acts_( index.positions( act ) ),
        tgts_( index.positions( tgt ) ), out_( out ), stats_( stats )
  {
  }

  void fail( std::optional<std::uint32_t> pos, Reason r )
  {
    failed_ = true;
    if ( out_ )
      out_->failures.push_back( Failure{ pos, r } );
  }
  void witness( std::uint32_t obliged, std::uint32_t by )
  {
    if ( out_ )
      out_->witnesses.emplace( obliged, by );
  }
  bool failed() const { return failed_; }
  void tick() { if ( stats_ ) ++stats_->steps; }

  /// Every activation needs a strictly later target.
  void response()
  {
    std::size_t j = 0;
    for ( auto t : acts_ )
    {
      tick();
      while ( j < tgts_.size() && tgts_[j] <= t )
      {
        tick();
        ++j;
      }
      if ( j < tgts_.size() )
        witness( t, tgts_[j] );
      else
        fail( t, Reason::NoLaterTarget );
    }
  }

  /// No target before the first activation, and none at all without an activation.
  void precedence()
  {
    if ( tgts_.empty() )
      return;
    if ( acts_.empty() )
    {
      fail( tgts_.front(), Reason::TargetWithoutActivation );
      return;
    }
    const auto first = acts_.front();
    for ( auto t : tgts_ )
    {
      tick();
      if ( t < first )
        fail( t, Reason::TargetBeforeActivation );
      else if ( t > first )
        witness( t, first );
      else
        break;
    }
  }

  /// Every activation needs a target strictly before the next activation (or the end).
  void alternate_response()
  {
    std::size_t j = 0;
    for ( std::size_t i = 0; i < acts_.size(); ++i )
    {
      tick();
      const auto t = acts_[i];
      while ( j < tgts_.size() && tgts_[j] <= t )
      {
        tick();
        ++j;
      }
      const bool bounded = i + 1 < acts_.size();
      if ( j < tgts_.size() && ( !bounded || tgts_[j] < acts_[i + 1] ) )
        witness( t, tgts_[j] );
      else
        fail( t, Reason::NoTargetBeforeNextActivation );
    }
  }

  /// Two targets t0 < t2 with no activation in [t0, t2].
  void repeated_targets()
  {
    std::size_t i = 0;
    for ( std::size_t j = 1; j < tgts_.size(); ++j )
    {
      tick();
      const auto t0 = tgts_[j - 1];
      const auto t2 = tgts_[j];
      while ( i < acts_.size() && acts_[i] < t0 )
      {
        tick();
        ++i;
      }
      if ( i < acts_.size() && acts_[i] <= t2 )
        witness( t2, acts_[i] );
      else
        fail( t2, Reason::RepeatedTarget );
    }
  }

  /// Each target needs an activation strictly between the previous target (or -inf) and itself.
  void alternate_succession_precedence()
  {
    std::size_t i = 0;
    for ( std::size_t j = 0; j < tgts_.size(); ++j )
    {
      tick();
      const auto t2 = tgts_[j];
      const bool bounded = j > 0;
      const std::uint32_t t0 = bounded ? tgts_[j - 1] : 0;
      while ( i < acts_.size() && bounded && acts_[i] <= t0 )
      {
        tick();
        ++i;
      }
      // latest activation below t2 that is still above t0
      std::size_t k = i;
      while ( k + 1 < acts_.size() && acts_[k + 1] < t2 )
      {
        tick();
        ++k;
      }
      if ( k < acts_.size() && acts_[k] < t2 && ( !bounded || acts_[k] > t0 ) )
      {
        witness( t2, acts_[k] );
        i = k;
      }
      else if ( j > 0 )
        fail( t2, Reason::RepeatedTarget );
      else
        fail( t2, acts_.empty() ? Reason::TargetWithoutActivation : Reason::TargetBeforeActivation );
    }
  }

  void chain_response()
  {
    for ( auto t : acts_ )
    {
      tick();
      if ( t + 1 < trace_.size() && trace_[t + 1] == tgt_ )
        witness( t, t + 1 );
      else
        fail( t, Reason::NoImmediateTarget );
    }
  }

  void chain_precedence()
  {
    for ( auto t : tgts_ )
    {
      tick();
      if ( t == 0 )
        fail( t, Reason::TargetAtStart );
      else if ( trace_[t - 1] == act_ )
        witness( t, t - 1 );
      else
        fail( t, Reason::NoImmediateActivation );
    }
  }

  bool has_act() const { return !acts_.empty(); }
  bool has_tgt() const { return !tgts_.empty(); }

private:
  const Trace& trace_;
  Activity act_;
  Activity tgt_;
  Positions acts_;
  Positions tgts_;
  DirectVerdict* out_;
  DirectStats* stats_;
  bool failed_ = false;
};

bool run_scan( Scan& scan, const Constraint& c, const TraceIndex& index, const DirectOptions& options )
{
  switch ( c.kind )
  {
  case TemplateKind::Choice:
    if ( !scan.has_act() && !scan.has_tgt() )
      scan.fail( std::nullopt, Reason::NeitherOccurs );
    break;
  case TemplateKind::ExclusiveChoice:
    if ( scan.has_act() && scan.has_tgt() )
      scan.fail( std::nullopt, Reason::BothOccur );
    else if ( !scan.has_act() && !scan.has_tgt() )
      scan.fail( std::nullopt, Reason::NeitherOccurs );
    break;
  case TemplateKind::RespondedExistence:
    if ( scan.has_act() && !scan.has_tgt() )
      scan.fail( std::nullopt, Reason::ActivationWithoutTarget );
    break;
  case TemplateKind::Coexistence:
    if ( scan.has_act() && !scan.has_tgt() )
      scan.fail( std::nullopt, Reason::ActivationWithoutTarget );
    else if ( !scan.has_act() && scan.has_tgt() )
      scan.fail( std::nullopt, Reason::TargetWithoutActivation );
    break;
  case TemplateKind::Response: scan.response(); break;
  case TemplateKind::Precedence: scan.precedence(); break;
  case TemplateKind::AlternateResponse: scan.alternate_response(); break;
  case TemplateKind::AlternatePrecedence:
    scan.precedence();
    scan.repeated_targets();
    break;
  case TemplateKind::ChainResponse: scan.chain_response(); break;
  case TemplateKind::ChainPrecedence: scan.chain_precedence(); break;
  case TemplateKind::Succession:
    scan.response();
    scan.precedence();
    break;
  case TemplateKind::AlternateSuccession:
    scan.alternate_response();
    scan.alternate_succession_precedence();
    if ( options.alternate_succession_last_target_rule && !index.trace().empty() &&
         index.trace()[index.trace().size() - 1] == c.target )
      scan.fail( static_cast<std::uint32_t>( index.trace().size() - 1 ), Reason::TargetAtEnd );
    break;
  case TemplateKind::ChainSuccession:
    scan.chain_response();
    scan.chain_precedence();
    break;
  }
  return !scan.failed();
}

} // namespace

DirectVerdict check_direct( const Constraint& c, const TraceIndex& index, const DirectOptions& options,
                            DirectStats* stats )
{
  DirectVerdict v;
  Scan scan( index, c.activation, c.target, &v, stats );
  v.sat = run_scan( scan, c, index, options );
  return v;
}

bool holds_direct( const Constraint& c, const TraceIndex& index, const DirectOptions& options )
{
  Scan scan( index, c.activation, c.target, nullptr, nullptr );
  return run_scan( scan, c, index, options );
}

DirectVerdict check_direct( const Constraint& c, const Trace& trace, const DirectOptions& options )
{
  return check_direct( c, TraceIndex( trace ), options );
}

} // namespace declare::direct
