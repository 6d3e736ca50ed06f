#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include <fsmcgp/fsm.hpp>

namespace fsmcgp
{

/// A bundled Moore-type sequence detector and the state count it must have.
struct builtin_detector
{
  std::string_view name;
  std::size_t num_states;
};

inline constexpr std::array<builtin_detector, 4> builtin_detectors{ { { "10101", 6u },
                                                                      { "0001000", 8u },
                                                                      { "01100110", 9u },
                                                                      { "12-0s-then-1", 14u } } };

/*! \brief Moore detector for a fixed bit pattern, overlapping matches allowed.
 *
 * State `S<k>` means the longest suffix of the input seen so far that is a
 * prefix of `pattern` has length k. The single output is 1 exactly in the
 * final state, and every transition row carries the output of its current
 * state, so the output asserts in the cycle after the last pattern bit.
 */
fsm make_pattern_detector( std::string_view name, std::string_view pattern );

/*! \brief Moore detector for "at least `zeros` consecutive 0s, then a 1".
 *
 * States `Z0`..`Z<zeros>` count trailing zeros (saturating), `HIT` is the
 * accepting state; `zeros + 2` states in total.
 */
fsm make_zero_run_detector( std::string_view name, std::size_t zeros );

/// Bundled detector by name; throws std::invalid_argument for unknown names.
fsm load_builtin( std::string_view name );

bool is_builtin( std::string_view name );

/// Number of states of the detector, computed at compile time.
constexpr std::size_t detector_state_count( std::string_view name )
{
  if ( name == "12-0s-then-1" )
  {
    return 12u + 2u;
  }
  return name.size() + 1u;
}

static_assert( [] {
  for ( const auto& d : builtin_detectors )
  {
    if ( detector_state_count( d.name ) != d.num_states )
    {
      return false;
    }
  }
  return true;
}() );

} // namespace fsmcgp
