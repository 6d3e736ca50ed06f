#pragma once

// Deliberately naive reference implementations. They share no code with the
// library beyond the data types.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <fsmcgp/cgp.hpp>
#include <fsmcgp/encoding.hpp>
#include <fsmcgp/fsm.hpp>
#include <fsmcgp/truth_table.hpp>

namespace oracle
{

// reachability from the outputs by explicit graph search
inline std::set<std::uint32_t> active_nodes( const fsmcgp::genotype& g )
{
  const auto& p = g.params();
  const auto genes = g.genes();
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack;
  for ( unsigned o = 0; o < p.num_outputs; ++o )
  {
    stack.push_back( genes[3u * p.columns + o] );
  }
  while ( !stack.empty() )
  {
    const auto addr = stack.back();
    stack.pop_back();
    if ( addr < p.num_inputs )
    {
      continue;
    }
    const auto node = addr - p.num_inputs;
    if ( !seen.insert( node ).second )
    {
      continue;
    }
    stack.push_back( genes[3u * node + 1u] );
    stack.push_back( genes[3u * node + 2u] );
  }
  return seen;
}

// recursive evaluation of one address on one row, no decoding
inline bool eval_address( const fsmcgp::genotype& g, std::uint32_t addr, std::uint64_t row )
{
  const auto& p = g.params();
  if ( addr < p.num_inputs )
  {
    return ( row >> addr ) & 1u;
  }
  const auto node = addr - p.num_inputs;
  const auto genes = g.genes();
  const bool a = eval_address( g, genes[3u * node + 1u], row );
  const bool b = eval_address( g, genes[3u * node + 2u], row );
  return genes[3u * node] == 0u ? !( a && b ) : !( a || b );
}

inline std::uint64_t mismatches( const fsmcgp::genotype& g, const fsmcgp::truth_table& tt )
{
  std::uint64_t count = 0;
  const auto& p = g.params();
  for ( std::uint64_t row = 0; row < ( 1ull << tt.num_vars ); ++row )
  {
    for ( unsigned o = 0; o < p.num_outputs; ++o )
    {
      if ( tt.care[row * tt.num_outs + o] &&
           eval_address( g, g.genes()[3u * p.columns + o], row ) != static_cast<bool>( tt.desired[row * tt.num_outs + o] ) )
      {
        ++count;
      }
    }
  }
  return count;
}

inline bool cube_matches( const std::string& cube, const std::string& bits )
{
  for ( std::size_t i = 0; i < cube.size(); ++i )
  {
    if ( cube[i] != '-' && cube[i] != bits[i] )
    {
      return false;
    }
  }
  return true;
}

// specified output bits summed over every (state, input minterm) pair
// covered by a transition, counted directly from the cubes
inline std::size_t care_bits_from_cubes( const fsmcgp::fsm& m, unsigned state_bits )
{
  std::size_t total = 0;
  for ( std::size_t s = 0; s < m.states.size(); ++s )
  {
    for ( std::uint64_t in = 0; in < ( 1ull << m.num_inputs ); ++in )
    {
      std::string bits( m.num_inputs, '0' );
      for ( std::size_t i = 0; i < m.num_inputs; ++i )
      {
        bits[i] = ( ( in >> ( m.num_inputs - 1u - i ) ) & 1u ) ? '1' : '0';
      }
      std::string merged( m.num_outputs, '-' );
      bool any = false;
      for ( const auto& t : m.transitions )
      {
        if ( t.current == s && cube_matches( t.input_cube, bits ) )
        {
          any = true;
          for ( std::size_t j = 0; j < m.num_outputs; ++j )
          {
            if ( t.output_cube[j] != '-' )
            {
              merged[j] = t.output_cube[j];
            }
          }
        }
      }
      if ( any )
      {
        total += state_bits;
        for ( const auto c : merged )
        {
          total += c != '-' ? 1u : 0u;
        }
      }
    }
  }
  return total;
}

// cycle-by-cycle symbolic simulation; returns the Moore output seen in each cycle
inline std::vector<std::string> simulate_symbolic( const fsmcgp::fsm& m, const std::vector<std::string>& inputs )
{
  std::vector<std::string> outs;
  auto state = *m.reset_state;
  for ( const auto& in : inputs )
  {
    for ( const auto& t : m.transitions )
    {
      if ( t.current == state && cube_matches( t.input_cube, in ) )
      {
        outs.push_back( t.output_cube );
        state = t.next;
        break;
      }
    }
  }
  return outs;
}

} // namespace oracle
