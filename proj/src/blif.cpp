#include <fsmcgp/netlist.hpp>

#include <algorithm>
#include <functional>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace fsmcgp
{

namespace
{

void write_gates( std::ostream& out, const gate_netlist& n )
{
  for ( std::size_t k = 0; k < n.gates.size(); ++k )
  {
    const auto& gt = n.gates[k];
    out << ".names " << n.signal_name( gt.src1 ) << ' ' << n.signal_name( gt.src2 ) << " g" << k << '\n';
    if ( gt.kind == gate_kind::nand )
    {
      out << "0- 1\n-0 1\n";
    }
    else
    {
      out << "00 1\n";
    }
  }
  for ( std::size_t c = 0; c < n.outputs.size(); ++c )
  {
    out << ".names " << n.signal_name( n.output_sources[c] ) << ' ' << n.outputs[c] << "\n1 1\n";
  }
}

void write_list( std::ostream& out, const char* directive, const std::vector<std::string>& names )
{
  out << directive;
  for ( const auto& name : names )
  {
    out << ' ' << name;
  }
  out << '\n';
}

bool parse_suffix( std::string_view name, std::string_view prefix, unsigned& index )
{
  if ( name.size() <= prefix.size() || name.substr( 0, prefix.size() ) != prefix )
  {
    return false;
  }
  unsigned value = 0;
  for ( const char c : name.substr( prefix.size() ) )
  {
    if ( c < '0' || c > '9' )
    {
      return false;
    }
    value = value * 10u + static_cast<unsigned>( c - '0' );
  }
  index = value;
  return true;
}

struct names_block
{
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::string> cover;
  std::size_t line;
};

struct latch_line
{
  std::string input;
  std::string output;
  bool init;
};

} // namespace

std::string export_blif( const fsm_netlist& fn )
{
  std::ostringstream out;
  for ( const auto& [state, code] : fn.state_codes )
  {
    out << "# state " << state << ' ' << code << '\n';
  }
  out << ".model " << fn.model << '\n';
  std::vector<std::string> pis, pos;
  for ( const auto i : fn.primary_inputs )
  {
    pis.push_back( fn.core.inputs[i] );
  }
  for ( const auto o : fn.primary_outputs )
  {
    pos.push_back( fn.core.outputs[o] );
  }
  write_list( out, ".inputs", pis );
  write_list( out, ".outputs", pos );
  out << ".clock clk\n";
  for ( const auto& l : fn.latches )
  {
    out << ".latch " << fn.core.outputs[l.next_state_output] << ' ' << fn.core.inputs[l.state_input] << " re clk "
        << ( l.init ? 1 : 0 ) << '\n';
  }
  write_gates( out, fn.core );
  out << ".end\n";
  return out.str();
}

std::string export_blif( const gate_netlist& n, std::string_view model )
{
  std::ostringstream out;
  out << ".model " << model << '\n';
  write_list( out, ".inputs", n.inputs );
  write_list( out, ".outputs", n.outputs );
  write_gates( out, n );
  out << ".end\n";
  return out.str();
}

fsm_netlist read_blif( std::istream& in )
{
  fsm_netlist fn;
  std::vector<std::string> inputs, outputs;
  std::set<std::string> clocks;
  std::vector<latch_line> latches;
  std::vector<names_block> blocks;

  std::string raw;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&]( const std::string& msg ) -> netlist_error {
    return netlist_error( "BLIF line " + std::to_string( line_no ) + ": " + msg );
  };

  while ( std::getline( in, raw ) )
  {
    ++line_no;
    if ( raw.rfind( "# state ", 0 ) == 0 )
    {
      std::istringstream fields( raw.substr( 8 ) );
      std::string state, code;
      if ( fields >> state >> code )
      {
        fn.state_codes.emplace_back( state, code );
      }
      continue;
    }
    if ( const auto hash = raw.find( '#' ); hash != std::string::npos )
    {
      raw.erase( hash );
    }
    while ( !raw.empty() && ( raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t' ) )
    {
      raw.pop_back();
    }
    if ( !raw.empty() && raw.back() == '\\' )
    {
      raw.pop_back();
      line += raw + ' ';
      continue;
    }
    line += raw;

    std::istringstream fields( line );
    std::vector<std::string> tokens;
    for ( std::string tok; fields >> tok; )
    {
      tokens.push_back( tok );
    }
    line.clear();
    if ( tokens.empty() )
    {
      continue;
    }

    const auto& head = tokens[0];
    if ( head == ".model" )
    {
      fn.model = tokens.size() > 1 ? tokens[1] : std::string{};
    }
    else if ( head == ".inputs" )
    {
      inputs.insert( inputs.end(), tokens.begin() + 1, tokens.end() );
    }
    else if ( head == ".outputs" )
    {
      outputs.insert( outputs.end(), tokens.begin() + 1, tokens.end() );
    }
    else if ( head == ".clock" )
    {
      clocks.insert( tokens.begin() + 1, tokens.end() );
    }
    else if ( head == ".latch" )
    {
      if ( tokens.size() != 3 && tokens.size() != 4 && tokens.size() != 6 )
      {
        throw fail( "malformed .latch" );
      }
      const auto& init = tokens.size() == 3 ? std::string( "0" ) : tokens.back();
      if ( init != "0" && init != "1" )
      {
        throw fail( "latch initial value must be 0 or 1" );
      }
      if ( tokens.size() == 6 )
      {
        clocks.insert( tokens[4] );
      }
      latches.push_back( { tokens[1], tokens[2], init == "1" } );
    }
    else if ( head == ".names" )
    {
      if ( tokens.size() < 2 )
      {
        throw fail( ".names without an output" );
      }
      names_block block;
      block.inputs.assign( tokens.begin() + 1, tokens.end() - 1 );
      block.output = tokens.back();
      block.line = line_no;
      blocks.push_back( std::move( block ) );
    }
    else if ( head == ".end" )
    {
      break;
    }
    else if ( head.front() == '.' )
    {
      throw fail( "unsupported directive " + head );
    }
    else
    {
      if ( blocks.empty() )
      {
        throw fail( "cover row outside a .names block" );
      }
      std::string row;
      for ( const auto& tok : tokens )
      {
        row += tok;
        row += ' ';
      }
      row.pop_back();
      blocks.back().cover.push_back( row );
    }
  }

  // primary inputs, then latch outputs in latch order
  auto& core = fn.core;
  for ( const auto& name : inputs )
  {
    if ( !clocks.contains( name ) )
    {
      core.inputs.push_back( name );
    }
  }
  const auto n_pi = static_cast<unsigned>( core.inputs.size() );
  const auto n_s = static_cast<unsigned>( latches.size() );
  for ( std::size_t i = 0; i < n_pi; ++i )
  {
    fn.primary_inputs.push_back( i );
  }
  if ( !latches.empty() )
  {
    for ( unsigned i = 0; i < n_pi; ++i )
    {
      core.input_vars.push_back( n_s + n_pi - 1u - i );
    }
    for ( unsigned k = 0; k < n_s; ++k )
    {
      core.inputs.push_back( latches[k].output );
      core.input_vars.push_back( k );
    }
  }
  else
  {
    unsigned ins = 0, states = 0, index = 0;
    for ( const auto& name : core.inputs )
    {
      ins += parse_suffix( name, "in", index ) ? 1u : 0u;
      states += parse_suffix( name, "s", index ) ? 1u : 0u;
    }
    for ( std::size_t pos = 0; pos < core.inputs.size(); ++pos )
    {
      const auto& name = core.inputs[pos];
      if ( parse_suffix( name, "x", index ) )
      {
        core.input_vars.push_back( index );
      }
      else if ( parse_suffix( name, "in", index ) && index < ins )
      {
        core.input_vars.push_back( states + ins - 1u - index );
      }
      else if ( parse_suffix( name, "s", index ) && index < states )
      {
        core.input_vars.push_back( index );
      }
      else
      {
        core.input_vars.push_back( static_cast<unsigned>( pos ) );
      }
    }
    fn.primary_inputs.clear();
  }

  for ( unsigned k = 0; k < n_s; ++k )
  {
    core.outputs.push_back( latches[k].input );
    fn.latches.push_back( { k, n_pi + k, latches[k].init } );
  }
  for ( const auto& name : outputs )
  {
    if ( !latches.empty() )
    {
      fn.primary_outputs.push_back( core.outputs.size() );
    }
    core.outputs.push_back( name );
  }

  // net name -> defining block; buffers are resolved as aliases
  std::unordered_map<std::string, std::size_t> input_pos;
  for ( std::size_t i = 0; i < core.inputs.size(); ++i )
  {
    input_pos.emplace( core.inputs[i], i );
  }
  std::unordered_map<std::string, std::size_t> driver;
  for ( std::size_t b = 0; b < blocks.size(); ++b )
  {
    if ( input_pos.contains( blocks[b].output ) || !driver.emplace( blocks[b].output, b ).second )
    {
      line_no = blocks[b].line;
      throw fail( "net '" + blocks[b].output + "' has more than one driver" );
    }
  }

  const auto classify = [&]( const names_block& block ) -> std::optional<gate_kind> {
    std::vector<std::string> cover = block.cover;
    std::sort( cover.begin(), cover.end() );
    if ( block.inputs.size() == 1u )
    {
      if ( cover == std::vector<std::string>{ "1 1" } )
      {
        return std::nullopt;
      }
    }
    else if ( block.inputs.size() == 2u )
    {
      if ( cover == std::vector<std::string>{ "-0 1", "0- 1" } ||
           cover == std::vector<std::string>{ "00 1", "01 1", "10 1" } )
      {
        return gate_kind::nand;
      }
      if ( cover == std::vector<std::string>{ "00 1" } )
      {
        return gate_kind::nor;
      }
    }
    line_no = block.line;
    throw fail( "'" + block.output + "' is not a 2-input NAND, NOR or buffer" );
  };

  std::vector<std::optional<gate_kind>> kind( blocks.size() );
  for ( std::size_t b = 0; b < blocks.size(); ++b )
  {
    kind[b] = classify( blocks[b] );
  }

  // depth-first placement gives a topological gate order
  std::vector<std::uint8_t> state( blocks.size(), 0u );
  std::vector<std::optional<std::size_t>> address( blocks.size() );
  const std::function<std::size_t( const std::string& )> resolve = [&]( const std::string& net ) -> std::size_t {
    if ( const auto it = input_pos.find( net ); it != input_pos.end() )
    {
      return it->second;
    }
    const auto it = driver.find( net );
    if ( it == driver.end() )
    {
      throw netlist_error( "BLIF net '" + net + "' is never driven" );
    }
    const auto b = it->second;
    if ( address[b] )
    {
      return *address[b];
    }
    if ( state[b] == 1u )
    {
      throw netlist_error( "BLIF net '" + net + "' is part of a combinational loop" );
    }
    state[b] = 1u;
    std::vector<std::size_t> srcs;
    for ( const auto& src : blocks[b].inputs )
    {
      srcs.push_back( resolve( src ) );
    }
    if ( kind[b] )
    {
      core.gates.push_back( { *kind[b], srcs[0], srcs[1] } );
      address[b] = core.inputs.size() + core.gates.size() - 1u;
    }
    else
    {
      address[b] = srcs[0];
    }
    state[b] = 2u;
    return *address[b];
  };

  for ( std::size_t b = 0; b < blocks.size(); ++b )
  {
    resolve( blocks[b].output );
  }
  for ( const auto& name : core.outputs )
  {
    core.output_sources.push_back( resolve( name ) );
  }
  return fn;
}

fsm_netlist parse_blif( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  return read_blif( in );
}

} // namespace fsmcgp
