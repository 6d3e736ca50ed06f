#include <fsmcgp/builtins.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fsmcgp
{

fsm make_pattern_detector( std::string_view name, std::string_view pattern )
{
  if ( pattern.empty() || pattern.find_first_not_of( "01" ) != std::string_view::npos )
  {
    throw std::invalid_argument( "detector pattern must be a non-empty binary string" );
  }

  const auto n = pattern.size();
  fsm machine;
  machine.name = std::string( name );
  machine.num_inputs = 1;
  machine.num_outputs = 1;
  for ( std::size_t k = 0; k <= n; ++k )
  {
    machine.states.push_back( "S" + std::to_string( k ) );
  }
  machine.reset_state = 0u;

  // KMP failure function
  std::vector<std::size_t> fail( n + 1, 0u );
  for ( std::size_t i = 1; i < n; ++i )
  {
    auto k = fail[i];
    while ( k > 0 && pattern[i] != pattern[k] )
    {
      k = fail[k];
    }
    fail[i + 1] = pattern[i] == pattern[k] ? k + 1 : 0u;
  }

  for ( std::size_t state = 0; state <= n; ++state )
  {
    for ( const char bit : { '0', '1' } )
    {
      auto k = state == n ? fail[n] : state;
      while ( k > 0 && pattern[k] != bit )
      {
        k = fail[k];
      }
      const auto next = pattern[k] == bit ? k + 1 : 0u;
      machine.transitions.push_back( { std::string( 1, bit ), state, next, state == n ? "1" : "0" } );
    }
  }
  return machine;
}

fsm make_zero_run_detector( std::string_view name, std::size_t zeros )
{
  fsm machine;
  machine.name = std::string( name );
  machine.num_inputs = 1;
  machine.num_outputs = 1;
  for ( std::size_t k = 0; k <= zeros; ++k )
  {
    machine.states.push_back( "Z" + std::to_string( k ) );
  }
  const auto hit = machine.states.size();
  machine.states.push_back( "HIT" );
  machine.reset_state = 0u;

  for ( std::size_t k = 0; k <= zeros; ++k )
  {
    machine.transitions.push_back( { "0", k, std::min( k + 1, zeros ), "0" } );
    machine.transitions.push_back( { "1", k, k == zeros ? hit : 0u, "0" } );
  }
  machine.transitions.push_back( { "0", hit, std::min<std::size_t>( 1u, zeros ), "1" } );
  machine.transitions.push_back( { "1", hit, zeros == 0 ? hit : 0u, "1" } );
  return machine;
}

bool is_builtin( std::string_view name )
{
  for ( const auto& d : builtin_detectors )
  {
    if ( d.name == name )
    {
      return true;
    }
  }
  return false;
}

fsm load_builtin( std::string_view name )
{
  if ( name == "12-0s-then-1" )
  {
    return make_zero_run_detector( name, 12u );
  }
  if ( is_builtin( name ) )
  {
    return make_pattern_detector( name, name );
  }
  throw std::invalid_argument( "unknown builtin '" + std::string( name ) + "'" );
}

} // namespace fsmcgp
