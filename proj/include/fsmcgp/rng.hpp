#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace fsmcgp
{

/// SplitMix64 generator. Only used to expand a 64-bit seed into xoshiro state.
class splitmix64
{
public:
  explicit constexpr splitmix64( std::uint64_t seed ) noexcept : state_( seed ) {}

  constexpr std::uint64_t operator()() noexcept
  {
    std::uint64_t z = ( state_ += 0x9e3779b97f4a7c15ull );
    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
    return z ^ ( z >> 31 );
  }

private:
  std::uint64_t state_;
};

/*! \brief xoshiro256** 1.0, seeded with four consecutive SplitMix64 outputs.
 *
 * The stream is fully specified so runs can be replayed from any language:
 * seed 0 yields 0x99ec5f36cb75f2b4, 0xbf6e1f784956452a, 0x1a5f849d4933e6e0, ...
 *
 * Bounded draws use `below`: the 128-bit product `raw * bound` is formed,
 * draws whose low half is below `2^64 mod bound` are rejected, and the high
 * half is returned.
 */
class xoshiro256ss
{
public:
  using result_type = std::uint64_t;

  explicit constexpr xoshiro256ss( std::uint64_t seed ) noexcept
  {
    splitmix64 sm( seed );
    for ( auto& word : s_ )
    {
      word = sm();
    }
  }

  static constexpr result_type min() noexcept { return 0u; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept
  {
    const auto result = rotl( s_[1] * 5u, 7 ) * 9u;
    const auto t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl( s_[3], 45 );
    return result;
  }

  /// Uniform integer in [0, bound).
  constexpr std::uint64_t below( std::uint64_t bound )
  {
    if ( bound == 0u )
    {
      throw std::invalid_argument( "xoshiro256ss::below: empty range" );
    }
    auto product = static_cast<unsigned __int128>( ( *this )() ) * bound;
    if ( static_cast<std::uint64_t>( product ) < bound )
    {
      const std::uint64_t threshold = ( 0u - bound ) % bound;
      while ( static_cast<std::uint64_t>( product ) < threshold )
      {
        product = static_cast<unsigned __int128>( ( *this )() ) * bound;
      }
    }
    return static_cast<std::uint64_t>( product >> 64 );
  }

private:
  static constexpr std::uint64_t rotl( std::uint64_t x, int k ) noexcept
  {
    return ( x << k ) | ( x >> ( 64 - k ) );
  }

  std::array<std::uint64_t, 4> s_{};
};

using rng = xoshiro256ss;

} // namespace fsmcgp
