#pragma once

#include <cstdint>

namespace declare
{

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64( std::uint64_t x ) noexcept
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

/*! \brief Seed of the independent stream `stream` derived from `base`.
 *
 * The base is mixed before the xor; otherwise bases differing in low bits
 * would hand out the same seeds to permuted stream numbers.
 */
constexpr std::uint64_t stream_seed( std::uint64_t base, std::uint64_t stream ) noexcept
{
  return splitmix64( splitmix64( base ) ^ stream );
}

} // namespace declare
