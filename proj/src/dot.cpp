#include <fsmcgp/netlist.hpp>

#include <sstream>

namespace fsmcgp
{

namespace
{

const char* gate_shape( gate_kind kind )
{
  return kind == gate_kind::nand ? "invhouse" : "invtriangle";
}

void write_gate_nodes( std::ostream& out, const gate_netlist& n )
{
  for ( std::size_t k = 0; k < n.gates.size(); ++k )
  {
    out << "  \"g" << k << "\" [shape=" << gate_shape( n.gates[k].kind ) << ", label=\"g" << k << "\\n"
        << to_string( n.gates[k].kind ) << "\"];\n";
  }
}

} // namespace

std::string export_dot( const fsm_netlist& fn )
{
  const auto& core = fn.core;
  std::vector<std::string> node_of( core.inputs.size() + core.gates.size() );
  for ( const auto i : fn.primary_inputs )
  {
    node_of[i] = "pi_" + core.inputs[i];
  }
  for ( std::size_t k = 0; k < fn.latches.size(); ++k )
  {
    node_of[fn.latches[k].state_input] = "latch" + std::to_string( k );
  }
  for ( std::size_t k = 0; k < core.gates.size(); ++k )
  {
    node_of[core.inputs.size() + k] = "g" + std::to_string( k );
  }

  std::ostringstream out;
  out << "digraph \"" << fn.model << "\" {\n";
  out << "  rankdir=LR;\n";
  for ( const auto i : fn.primary_inputs )
  {
    out << "  \"" << node_of[i] << "\" [shape=cds, label=\"" << core.inputs[i] << "\"];\n";
  }
  for ( std::size_t k = 0; k < fn.latches.size(); ++k )
  {
    const auto& l = fn.latches[k];
    out << "  \"latch" << k << "\" [shape=box, label=\"DFF\\n" << core.inputs[l.state_input] << " (init "
        << ( l.init ? 1 : 0 ) << ")\"];\n";
  }
  write_gate_nodes( out, core );
  for ( const auto o : fn.primary_outputs )
  {
    out << "  \"po_" << core.outputs[o] << "\" [shape=cds, label=\"" << core.outputs[o] << "\"];\n";
  }

  for ( std::size_t k = 0; k < core.gates.size(); ++k )
  {
    const auto& gt = core.gates[k];
    out << "  \"" << node_of[gt.src1] << "\" -> \"g" << k << "\";\n";
    out << "  \"" << node_of[gt.src2] << "\" -> \"g" << k << "\";\n";
  }
  for ( std::size_t k = 0; k < fn.latches.size(); ++k )
  {
    const auto o = fn.latches[k].next_state_output;
    out << "  \"" << node_of[core.output_sources[o]] << "\" -> \"latch" << k << "\" [label=\"" << core.outputs[o]
        << "\"];\n";
  }
  for ( const auto o : fn.primary_outputs )
  {
    out << "  \"" << node_of[core.output_sources[o]] << "\" -> \"po_" << core.outputs[o] << "\";\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_dot( const gate_netlist& n, std::string_view name )
{
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=LR;\n";
  for ( const auto& input : n.inputs )
  {
    out << "  \"pi_" << input << "\" [shape=cds, label=\"" << input << "\"];\n";
  }
  write_gate_nodes( out, n );
  for ( const auto& output : n.outputs )
  {
    out << "  \"po_" << output << "\" [shape=cds, label=\"" << output << "\"];\n";
  }
  const auto node = [&]( std::size_t address ) {
    return address < n.inputs.size() ? "pi_" + n.inputs[address] : n.signal_name( address );
  };
  for ( std::size_t k = 0; k < n.gates.size(); ++k )
  {
    out << "  \"" << node( n.gates[k].src1 ) << "\" -> \"g" << k << "\";\n";
    out << "  \"" << node( n.gates[k].src2 ) << "\" -> \"g" << k << "\";\n";
  }
  for ( std::size_t c = 0; c < n.outputs.size(); ++c )
  {
    out << "  \"" << node( n.output_sources[c] ) << "\" -> \"po_" << n.outputs[c] << "\";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace fsmcgp
