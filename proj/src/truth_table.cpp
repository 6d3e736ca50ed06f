#include <fsmcgp/truth_table.hpp>

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fsmcgp
{

truth_table truth_table::with_shape( unsigned primary_inputs, unsigned state_bits, unsigned primary_outputs )
{
  truth_table tt;
  tt.num_primary_inputs = primary_inputs;
  tt.num_state_bits = state_bits;
  tt.num_primary_outputs = primary_outputs;
  tt.num_vars = primary_inputs + state_bits;
  tt.num_outs = state_bits + primary_outputs;
  if ( tt.num_vars > max_truth_table_vars )
  {
    throw std::length_error( "truth table with " + std::to_string( tt.num_vars ) + " variables exceeds the limit of " +
                             std::to_string( max_truth_table_vars ) );
  }
  tt.desired.assign( tt.num_rows() * tt.num_outs, 0u );
  tt.care.assign( tt.num_rows() * tt.num_outs, 0u );
  return tt;
}

std::size_t truth_table::care_count() const
{
  return static_cast<std::size_t>( std::count( care.begin(), care.end(), std::uint8_t{ 1 } ) );
}

bool truth_table::row_has_care( std::size_t row ) const
{
  const auto first = care.begin() + static_cast<std::ptrdiff_t>( row * num_outs );
  return std::any_of( first, first + num_outs, []( auto c ) { return c != 0; } );
}

truth_table build_truth_table( const fsm& machine, const state_encoding& enc )
{
  if ( enc.codes.size() != machine.states.size() )
  {
    throw std::invalid_argument( "encoding covers " + std::to_string( enc.codes.size() ) + " states, machine has " +
                                 std::to_string( machine.states.size() ) );
  }

  auto tt = truth_table::with_shape( static_cast<unsigned>( machine.num_inputs ), enc.width,
                                     static_cast<unsigned>( machine.num_outputs ) );

  // code -> state lookup over the full code space
  std::vector<std::optional<std::size_t>> state_by_code( std::size_t{ 1 } << enc.width );
  for ( std::size_t s = 0; s < enc.codes.size(); ++s )
  {
    state_by_code.at( enc.codes[s] ) = s;
  }

  std::vector<std::vector<const transition*>> by_state( machine.states.size() );
  for ( const auto& t : machine.transitions )
  {
    by_state[t.current].push_back( &t );
  }

  const std::size_t code_mask = ( std::size_t{ 1 } << enc.width ) - 1u;
  std::string inputs( machine.num_inputs, '0' );
  for ( std::size_t row = 0; row < tt.num_rows(); ++row )
  {
    const auto state = state_by_code[row & code_mask];
    if ( !state )
    {
      continue;
    }
    for ( unsigned i = 0; i < machine.num_inputs; ++i )
    {
      inputs[i] = ( ( row >> tt.input_var( i ) ) & 1u ) ? '1' : '0';
    }
    for ( const auto* t : by_state[*state] )
    {
      if ( !cube_contains( t->input_cube, inputs ) )
      {
        continue;
      }
      const auto next_code = enc.codes[t->next];
      for ( unsigned k = 0; k < enc.width; ++k )
      {
        tt.set( row, tt.next_state_col( k ), ( next_code >> k ) & 1u );
      }
      for ( unsigned j = 0; j < machine.num_outputs; ++j )
      {
        const char c = t->output_cube[j];
        if ( c != '-' )
        {
          tt.set( row, tt.output_col( j ), c == '1' );
        }
      }
    }
  }
  return tt;
}

void write_pla( std::ostream& out, const truth_table& tt )
{
  std::size_t products = 0;
  for ( std::size_t row = 0; row < tt.num_rows(); ++row )
  {
    products += tt.row_has_care( row ) ? 1u : 0u;
  }

  out << ".i " << tt.num_vars << '\n' << ".o " << tt.num_outs << '\n' << ".p " << products << '\n';
  std::string line( tt.num_vars + 1u + tt.num_outs, ' ' );
  for ( std::size_t row = 0; row < tt.num_rows(); ++row )
  {
    if ( !tt.row_has_care( row ) )
    {
      continue;
    }
    for ( unsigned v = 0; v < tt.num_vars; ++v )
    {
      line[tt.num_vars - 1u - v] = ( ( row >> v ) & 1u ) ? '1' : '0';
    }
    for ( unsigned c = 0; c < tt.num_outs; ++c )
    {
      line[tt.num_vars + 1u + c] = !tt.care_bit( row, c ) ? '-' : ( tt.desired_bit( row, c ) ? '1' : '0' );
    }
    out << line << '\n';
  }
  out << ".e\n";
}

std::string export_pla( const truth_table& tt )
{
  std::ostringstream out;
  write_pla( out, tt );
  return out.str();
}

} // namespace fsmcgp
