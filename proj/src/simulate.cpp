#include <fsmcgp/netlist.hpp>

#include <ostream>

namespace fsmcgp
{

namespace
{

// one combinational evaluation of the core; returns all signal values
void eval_core( const gate_netlist& core, std::vector<std::uint8_t>& value )
{
  for ( std::size_t k = 0; k < core.gates.size(); ++k )
  {
    const auto& gt = core.gates[k];
    const bool a = value[gt.src1];
    const bool b = value[gt.src2];
    value[core.inputs.size() + k] = gt.kind == gate_kind::nand ? !( a && b ) : !( a || b );
  }
}

} // namespace

std::vector<std::string> random_stimulus( std::size_t width, std::size_t count, rng& gen )
{
  std::vector<std::string> stimulus( count, std::string( width, '0' ) );
  for ( auto& vec : stimulus )
  {
    for ( auto& c : vec )
    {
      c = gen.below( 2u ) ? '1' : '0';
    }
  }
  return stimulus;
}

simulation_report simulate_fsm( const fsm_netlist& fn, const fsm& machine, const state_encoding& enc,
                                std::span<const std::string> stimulus )
{
  if ( fn.latches.size() != enc.width || fn.primary_inputs.size() != machine.num_inputs ||
       fn.primary_outputs.size() != machine.num_outputs )
  {
    throw netlist_error( "netlist and machine disagree on inputs, outputs or state bits" );
  }
  if ( !machine.reset_state )
  {
    throw netlist_error( "machine '" + machine.name + "' has no reset state" );
  }

  const auto& core = fn.core;
  simulation_report report;
  std::vector<std::uint8_t> value( core.inputs.size() + core.gates.size(), 0u );
  std::vector<std::uint8_t> state( fn.latches.size() );
  for ( std::size_t k = 0; k < fn.latches.size(); ++k )
  {
    state[k] = fn.latches[k].init;
  }
  std::optional<std::size_t> symbolic = *machine.reset_state;

  const auto signal = [&]( std::size_t output ) { return static_cast<bool>( value[core.output_sources[output]] ); };

  for ( std::size_t t = 0; t < stimulus.size(); ++t )
  {
    const auto& inputs = stimulus[t];
    if ( inputs.size() != machine.num_inputs || inputs.find_first_not_of( "01" ) != std::string::npos )
    {
      throw netlist_error( "stimulus vector " + std::to_string( t ) + " is not " +
                           std::to_string( machine.num_inputs ) + " binary digits" );
    }
    ++report.cycles;

    for ( std::size_t i = 0; i < fn.primary_inputs.size(); ++i )
    {
      value[fn.primary_inputs[i]] = inputs[i] == '1';
    }
    for ( std::size_t k = 0; k < fn.latches.size(); ++k )
    {
      value[fn.latches[k].state_input] = state[k];
    }
    eval_core( core, value );

    std::string outs( machine.num_outputs, '0' );
    for ( std::size_t j = 0; j < machine.num_outputs; ++j )
    {
      outs[j] = signal( fn.primary_outputs[j] ) ? '1' : '0';
    }
    report.output_trace.push_back( outs );

    std::uint32_t gate_next = 0;
    for ( std::size_t k = 0; k < fn.latches.size(); ++k )
    {
      gate_next |= static_cast<std::uint32_t>( signal( fn.latches[k].next_state_output ) ) << k;
    }

    std::optional<std::size_t> next_symbolic;
    if ( symbolic )
    {
      std::string expected( machine.num_outputs, '-' );
      for ( const auto& tr : machine.transitions )
      {
        if ( tr.current != *symbolic || !cube_contains( tr.input_cube, inputs ) )
        {
          continue;
        }
        next_symbolic = tr.next;
        for ( std::size_t j = 0; j < machine.num_outputs; ++j )
        {
          if ( tr.output_cube[j] != '-' )
          {
            expected[j] = tr.output_cube[j];
          }
        }
      }

      if ( next_symbolic )
      {
        ++report.compared_cycles;
        for ( std::size_t j = 0; j < machine.num_outputs; ++j )
        {
          if ( expected[j] != '-' && expected[j] != outs[j] )
          {
            report.divergence_cycle = t;
            report.divergence = "output " + std::to_string( j ) + " is " + outs[j] + ", expected " + expected[j] +
                                " in state '" + machine.states[*symbolic] + "' on input " + inputs;
            return report;
          }
        }
        if ( gate_next != enc.codes[*next_symbolic] )
        {
          report.divergence_cycle = t;
          report.divergence = "next state code differs from '" + machine.states[*next_symbolic] + "' (" +
                              enc.code_string( *next_symbolic ) + ") in state '" + machine.states[*symbolic] +
                              "' on input " + inputs;
          return report;
        }
      }
      else
      {
        report.unconstrained_cycles.push_back( t );
      }
    }
    else
    {
      report.unconstrained_cycles.push_back( t );
    }

    for ( std::size_t k = 0; k < fn.latches.size(); ++k )
    {
      state[k] = ( gate_next >> k ) & 1u;
    }
    symbolic = next_symbolic ? next_symbolic : enc.state_of( gate_next );
  }
  return report;
}

void simulation_report::write( std::ostream& out ) const
{
  if ( passed() )
  {
    out << "PASS\n";
  }
  else
  {
    out << "FAIL cycle " << *divergence_cycle << ": " << divergence << '\n';
  }
  out << "# cycles " << cycles << ", compared " << compared_cycles << ", unconstrained " << unconstrained_cycles.size()
      << '\n';
}

} // namespace fsmcgp
