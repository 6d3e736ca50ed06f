#include <fsmcgp/netlist.hpp>

#include <ostream>
#include <stdexcept>

namespace fsmcgp
{

std::string_view to_string( gate_kind kind )
{
  return kind == gate_kind::nand ? "NAND" : "NOR";
}

std::string gate_netlist::signal_name( std::size_t address ) const
{
  if ( address < inputs.size() )
  {
    return inputs[address];
  }
  return "g" + std::to_string( address - inputs.size() );
}

signal_naming signal_naming::for_table( const truth_table& tt )
{
  signal_naming names;
  for ( unsigned i = 0; i < tt.num_primary_inputs; ++i )
  {
    names.inputs.push_back( { tt.input_var( i ), "in" + std::to_string( i ) } );
  }
  for ( unsigned k = 0; k < tt.num_state_bits; ++k )
  {
    names.inputs.push_back( { tt.state_var( k ), "s" + std::to_string( k ) } );
  }
  names.outputs.resize( tt.num_outs );
  for ( unsigned k = 0; k < tt.num_state_bits; ++k )
  {
    names.outputs[tt.next_state_col( k )] = "ns" + std::to_string( k );
  }
  for ( unsigned j = 0; j < tt.num_primary_outputs; ++j )
  {
    names.outputs[tt.output_col( j )] = "out" + std::to_string( j );
  }
  return names;
}

signal_naming signal_naming::generic( unsigned num_vars, unsigned num_outs )
{
  signal_naming names;
  for ( unsigned v = 0; v < num_vars; ++v )
  {
    names.inputs.push_back( { v, "x" + std::to_string( v ) } );
  }
  for ( unsigned c = 0; c < num_outs; ++c )
  {
    names.outputs.push_back( "y" + std::to_string( c ) );
  }
  return names;
}

gate_netlist to_netlist( const phenotype& p, const genotype& g, const signal_naming& names )
{
  const auto& params = g.params();
  if ( names.inputs.size() != params.num_inputs || names.outputs.size() != params.num_outputs )
  {
    throw netlist_error( "signal naming does not match the genotype's inputs and outputs" );
  }

  gate_netlist n;
  std::vector<std::size_t> address_of( params.address_count(), 0u );
  std::vector<bool> named( params.num_inputs, false );
  for ( std::size_t pos = 0; pos < names.inputs.size(); ++pos )
  {
    const auto var = names.inputs[pos].var;
    if ( var >= params.num_inputs || named[var] )
    {
      throw netlist_error( "signal naming must list every variable exactly once" );
    }
    named[var] = true;
    address_of[var] = pos;
    n.inputs.push_back( names.inputs[pos].name );
    n.input_vars.push_back( var );
  }

  for ( const auto j : p.active )
  {
    address_of[params.num_inputs + j] = n.inputs.size() + n.gates.size();
    n.gates.push_back( { g.node_function( j ) == gate_function::nand ? gate_kind::nand : gate_kind::nor,
                         address_of[g.node_input( j, 0 )], address_of[g.node_input( j, 1 )] } );
  }

  n.outputs = names.outputs;
  for ( const auto src : p.output_sources )
  {
    n.output_sources.push_back( address_of[src] );
  }
  return n;
}

verification_report verify_netlist( const gate_netlist& n, const truth_table& tt )
{
  if ( n.outputs.size() != tt.num_outs || n.output_sources.size() != tt.num_outs || n.inputs.size() != tt.num_vars ||
       n.input_vars.size() != n.inputs.size() )
  {
    throw netlist_error( "netlist has " + std::to_string( n.inputs.size() ) + " inputs and " +
                         std::to_string( n.outputs.size() ) + " outputs, truth table has " +
                         std::to_string( tt.num_vars ) + " and " + std::to_string( tt.num_outs ) );
  }
  for ( const auto v : n.input_vars )
  {
    if ( v >= tt.num_vars )
    {
      throw netlist_error( "netlist input reads variable " + std::to_string( v ) + " outside the truth table" );
    }
  }

  verification_report report;
  std::vector<std::uint8_t> value( n.inputs.size() + n.gates.size(), 0u );
  for ( std::size_t row = 0; row < tt.num_rows(); ++row )
  {
    for ( std::size_t i = 0; i < n.inputs.size(); ++i )
    {
      value[i] = static_cast<std::uint8_t>( ( row >> n.input_vars[i] ) & 1u );
    }
    for ( std::size_t k = 0; k < n.gates.size(); ++k )
    {
      const auto& gt = n.gates[k];
      const bool a = value[gt.src1];
      const bool b = value[gt.src2];
      value[n.inputs.size() + k] = gt.kind == gate_kind::nand ? !( a && b ) : !( a || b );
    }
    for ( unsigned c = 0; c < tt.num_outs; ++c )
    {
      if ( !tt.care_bit( row, c ) )
      {
        continue;
      }
      ++report.care_bits;
      if ( static_cast<bool>( value[n.output_sources[c]] ) != tt.desired_bit( row, c ) )
      {
        report.mismatches.push_back( { row, c } );
      }
    }
    ++report.rows_checked;
  }
  return report;
}

void verification_report::write( std::ostream& out, const gate_netlist& netlist ) const
{
  if ( passed() )
  {
    out << "PASS\n";
  }
  for ( const auto& m : mismatches )
  {
    out << "FAIL " << m.row << ' ' << ( m.output < netlist.outputs.size() ? netlist.outputs[m.output] : "?" ) << '\n';
  }
  out << "# rows " << rows_checked << ", care bits " << care_bits << ", mismatches " << mismatches.size() << '\n';
}

fsm_netlist assemble_fsm( const gate_netlist& core, const state_encoding& enc, const fsm& machine )
{
  if ( !machine.reset_state )
  {
    throw netlist_error( "machine '" + machine.name + "' has no reset state" );
  }
  if ( enc.codes.size() != machine.states.size() )
  {
    throw netlist_error( "encoding does not cover the machine's states" );
  }

  const auto find = []( const std::vector<std::string>& names, const std::string& wanted ) {
    for ( std::size_t i = 0; i < names.size(); ++i )
    {
      if ( names[i] == wanted )
      {
        return i;
      }
    }
    throw netlist_error( "netlist has no signal '" + wanted + "'" );
  };

  fsm_netlist fn;
  fn.model = machine.name;
  fn.core = core;
  const auto reset_code = enc.codes[*machine.reset_state];
  for ( unsigned k = 0; k < enc.width; ++k )
  {
    fn.latches.push_back( { find( core.outputs, "ns" + std::to_string( k ) ), find( core.inputs, "s" + std::to_string( k ) ),
                            static_cast<bool>( ( reset_code >> k ) & 1u ) } );
  }
  for ( std::size_t i = 0; i < machine.num_inputs; ++i )
  {
    fn.primary_inputs.push_back( find( core.inputs, "in" + std::to_string( i ) ) );
  }
  for ( std::size_t j = 0; j < machine.num_outputs; ++j )
  {
    fn.primary_outputs.push_back( find( core.outputs, "out" + std::to_string( j ) ) );
  }
  if ( fn.primary_inputs.size() + fn.latches.size() != core.inputs.size() ||
       fn.primary_outputs.size() + fn.latches.size() != core.outputs.size() )
  {
    throw netlist_error( "netlist ports do not match the machine's inputs, outputs and state bits" );
  }
  for ( std::size_t s = 0; s < machine.states.size(); ++s )
  {
    fn.state_codes.emplace_back( machine.states[s], enc.code_string( s ) );
  }
  return fn;
}

double reduction_percent( std::size_t baseline_gates, std::size_t cgp_gates )
{
  if ( baseline_gates == 0u )
  {
    throw std::invalid_argument( "reduction_percent: baseline gate count must be positive" );
  }
  const auto diff = static_cast<long long>( baseline_gates ) - static_cast<long long>( cgp_gates );
  const auto hundredths = ( diff * 10000 ) / static_cast<long long>( baseline_gates );
  return static_cast<double>( hundredths ) / 100.0;
}

std::string format_reduction( std::size_t baseline_gates, std::size_t cgp_gates )
{
  if ( baseline_gates == 0u )
  {
    throw std::invalid_argument( "reduction_percent: baseline gate count must be positive" );
  }
  const auto diff = static_cast<long long>( baseline_gates ) - static_cast<long long>( cgp_gates );
  const auto hundredths = ( diff * 10000 ) / static_cast<long long>( baseline_gates );
  const auto magnitude = hundredths < 0 ? -hundredths : hundredths;
  const auto cents = magnitude % 100;
  return ( hundredths < 0 ? "-" : "" ) + std::to_string( magnitude / 100 ) + ( cents < 10 ? ".0" : "." ) +
         std::to_string( cents );
}

} // namespace fsmcgp
