#include <fsmcgp/evaluator.hpp>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace fsmcgp
{

double rmse_of( std::uint64_t mismatches, std::uint64_t total_care )
{
  if ( total_care == 0u )
  {
    return 0.0;
  }
  return std::sqrt( static_cast<double>( mismatches ) / static_cast<double>( total_care ) );
}

packed_table pack_table( const truth_table& tt )
{
  if ( tt.num_vars > max_packed_vars )
  {
    throw std::length_error( "pack_table: " + std::to_string( tt.num_vars ) + " variables exceed the limit of " +
                             std::to_string( max_packed_vars ) );
  }

  packed_table pt;
  pt.num_vars_ = tt.num_vars;
  pt.num_outs_ = tt.num_outs;
  const auto rows = tt.num_rows();
  pt.words_ = ( rows + packed_table::word_width - 1u ) / packed_table::word_width;
  pt.inputs_.assign( pt.words_ * tt.num_vars, 0u );
  pt.desired_.assign( pt.words_ * tt.num_outs, 0u );
  pt.care_.assign( pt.words_ * tt.num_outs, 0u );

  // bit b of every word repeats the low six variables; higher ones are constant per word
  constexpr std::uint64_t low_patterns[6] = { 0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
                                              0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };
  for ( unsigned v = 0; v < tt.num_vars; ++v )
  {
    for ( std::size_t w = 0; w < pt.words_; ++w )
    {
      pt.inputs_[v * pt.words_ + w] = v < 6u ? low_patterns[v] : ( ( ( w >> ( v - 6u ) ) & 1u ) ? ~std::uint64_t{ 0 } : 0u );
    }
  }

  for ( std::size_t r = 0; r < rows; ++r )
  {
    const auto w = r / packed_table::word_width;
    const auto bit = std::uint64_t{ 1 } << ( r % packed_table::word_width );
    for ( unsigned c = 0; c < tt.num_outs; ++c )
    {
      if ( tt.care_bit( r, c ) )
      {
        pt.care_[c * pt.words_ + w] |= bit;
        ++pt.total_care_;
        if ( tt.desired_bit( r, c ) )
        {
          pt.desired_[c * pt.words_ + w] |= bit;
        }
      }
    }
  }
  return pt;
}

packed_evaluator::packed_evaluator( const packed_table& table ) : table_( &table ) {}

fitness packed_evaluator::operator()( const genotype& g )
{
  decode_into( g, mark_, active_ );
  return ( *this )( g, active_ );
}

fitness packed_evaluator::operator()( const genotype& g, std::span<const std::uint32_t> active )
{
  const auto& params = g.params();
  const auto& table = *table_;
  if ( params.num_inputs != table.num_vars() || params.num_outputs != table.num_outs() )
  {
    throw std::invalid_argument( "evaluate: genotype has " + std::to_string( params.num_inputs ) + " inputs and " +
                                 std::to_string( params.num_outputs ) + " outputs, table has " +
                                 std::to_string( table.num_vars() ) + " and " + std::to_string( table.num_outs() ) );
  }

  const auto words = table.words_per_col();
  const auto n_i = params.num_inputs;
  values_.resize( std::size_t{ params.columns } * words );

  const auto column = [&]( std::uint32_t address ) -> const std::uint64_t* {
    return address < n_i ? table.input_col( address ).data() : values_.data() + ( address - n_i ) * words;
  };

  for ( const auto j : active )
  {
    const auto* a = column( g.node_input( j, 0 ) );
    const auto* b = column( g.node_input( j, 1 ) );
    auto* out = values_.data() + std::size_t{ j } * words;
    if ( g.node_function( j ) == gate_function::nand )
    {
      for ( std::size_t w = 0; w < words; ++w )
      {
        out[w] = ~( a[w] & b[w] );
      }
    }
    else
    {
      for ( std::size_t w = 0; w < words; ++w )
      {
        out[w] = ~( a[w] | b[w] );
      }
    }
  }

  std::uint64_t mismatches = 0;
  for ( unsigned o = 0; o < params.num_outputs; ++o )
  {
    const auto* evolved = column( g.output( o ) );
    const auto desired = table.desired_col( o );
    const auto care = table.care_col( o );
    for ( std::size_t w = 0; w < words; ++w )
    {
      mismatches += static_cast<std::uint64_t>( std::popcount( ( evolved[w] ^ desired[w] ) & care[w] ) );
    }
  }
  return { mismatches, rmse_of( mismatches, table.total_care() ) };
}

fitness evaluate( const genotype& g, const packed_table& table )
{
  packed_evaluator eval( table );
  return eval( g );
}

fitness evaluate_scalar( const genotype& g, const truth_table& tt )
{
  const auto& params = g.params();
  if ( params.num_inputs != tt.num_vars || params.num_outputs != tt.num_outs )
  {
    throw std::invalid_argument( "evaluate_scalar: genotype shape does not match the truth table" );
  }

  const auto pheno = decode( g );
  std::vector<bool> value( params.address_count(), false );
  std::uint64_t mismatches = 0;
  std::uint64_t total_care = 0;

  for ( std::size_t row = 0; row < tt.num_rows(); ++row )
  {
    for ( unsigned v = 0; v < params.num_inputs; ++v )
    {
      value[v] = ( row >> v ) & 1u;
    }
    for ( const auto j : pheno.active )
    {
      value[params.num_inputs + j] =
          node_eval( g.node_function( j ), value[g.node_input( j, 0 )], value[g.node_input( j, 1 )] );
    }
    for ( unsigned o = 0; o < params.num_outputs; ++o )
    {
      if ( !tt.care_bit( row, o ) )
      {
        continue;
      }
      ++total_care;
      if ( value[pheno.output_sources[o]] != tt.desired_bit( row, o ) )
      {
        ++mismatches;
      }
    }
  }
  return { mismatches, rmse_of( mismatches, total_care ) };
}

} // namespace fsmcgp
