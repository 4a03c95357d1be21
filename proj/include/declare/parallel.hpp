#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace declare
{

/// 0 means "all available cores".
inline unsigned resolve_threads( unsigned requested )
{
  if ( requested != 0 )
    return requested;
  return std::max( 1u, std::thread::hardware_concurrency() );
}

/// Calls fn(i) for i in [0, n) on up to `threads` workers; the first exception is rethrown.
template <typename Fn>
void parallel_for( std::size_t n, unsigned threads, Fn&& fn )
{
  const auto workers = std::min<std::size_t>( resolve_threads( threads ), n );
  if ( workers <= 1 )
  {
    for ( std::size_t i = 0; i < n; ++i )
      fn( i );
    return;
  }
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve( workers );
  for ( std::size_t w = 0; w < workers; ++w )
  {
    pool.emplace_back( [&] {
      for ( std::size_t i; ( i = next.fetch_add( 1 ) ) < n; )
      {
        try
        {
          fn( i );
        }
        catch ( ... )
        {
          std::lock_guard lock( error_mutex );
          if ( !error )
            error = std::current_exception();
          next = n;
        }
      }
    } );
  }
  pool.clear();
  if ( error )
    std::rethrow_exception( error );
}

} // namespace declare
