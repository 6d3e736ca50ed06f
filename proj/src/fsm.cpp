#include <fsmcgp/fsm.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace fsmcgp
{

std::optional<std::size_t> fsm::find_state( std::string_view state_name ) const
{
  const auto it = std::find( states.begin(), states.end(), state_name );
  if ( it == states.end() )
  {
    return std::nullopt;
  }
  return static_cast<std::size_t>( it - states.begin() );
}

parse_error::parse_error( std::size_t line, const std::string& message )
    : std::runtime_error( line == 0 ? message : "line " + std::to_string( line ) + ": " + message ),
      line_( line )
{
}

bool cubes_intersect( std::string_view a, std::string_view b )
{
  for ( std::size_t i = 0; i < a.size() && i < b.size(); ++i )
  {
    if ( ( a[i] == '0' && b[i] == '1' ) || ( a[i] == '1' && b[i] == '0' ) )
    {
      return false;
    }
  }
  return true;
}

bool cube_contains( std::string_view cube, std::string_view bits )
{
  if ( cube.size() != bits.size() )
  {
    return false;
  }
  for ( std::size_t i = 0; i < cube.size(); ++i )
  {
    if ( cube[i] != '-' && cube[i] != bits[i] )
    {
      return false;
    }
  }
  return true;
}

namespace
{

bool is_cube( std::string_view s )
{
  return std::all_of( s.begin(), s.end(), []( char c ) { return c == '0' || c == '1' || c == '-'; } );
}

std::string_view trim( std::string_view s )
{
  const auto first = s.find_first_not_of( " \t\r\f\v" );
  if ( first == std::string_view::npos )
  {
    return {};
  }
  const auto last = s.find_last_not_of( " \t\r\f\v" );
  return s.substr( first, last - first + 1 );
}

std::vector<std::string_view> split( std::string_view s )
{
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while ( pos < s.size() )
  {
    const auto start = s.find_first_not_of( " \t\r\f\v", pos );
    if ( start == std::string_view::npos )
    {
      break;
    }
    const auto end = std::min( s.find_first_of( " \t\r\f\v", start ), s.size() );
    tokens.push_back( s.substr( start, end - start ) );
    pos = end;
  }
  return tokens;
}

std::size_t parse_count( std::string_view token, std::size_t line )
{
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars( token.data(), token.data() + token.size(), value );
  if ( ec != std::errc{} || ptr != token.data() + token.size() )
  {
    throw parse_error( line, "expected a non-negative integer, got '" + std::string( token ) + "'" );
  }
  return value;
}

// body transition before state names are resolved
struct raw_transition
{
  std::string input_cube;
  std::string current;
  std::string next;
  std::string output_cube;
  std::size_t line;
};

// first pair of transitions that leave one state on overlapping inputs with
// different next states or contradicting output bits
std::optional<std::pair<std::size_t, std::size_t>> first_conflict( const fsm& machine )
{
  for ( std::size_t a = 0; a < machine.transitions.size(); ++a )
  {
    const auto& ta = machine.transitions[a];
    for ( std::size_t b = a + 1; b < machine.transitions.size(); ++b )
    {
      const auto& tb = machine.transitions[b];
      if ( ta.current != tb.current || !cubes_intersect( ta.input_cube, tb.input_cube ) )
      {
        continue;
      }
      bool agree = ta.next == tb.next;
      for ( std::size_t o = 0; agree && o < machine.num_outputs; ++o )
      {
        const char x = ta.output_cube[o];
        const char y = tb.output_cube[o];
        agree = x == '-' || y == '-' || x == y;
      }
      if ( !agree )
      {
        return std::pair{ a, b };
      }
    }
  }
  return std::nullopt;
}

std::string conflict_message( const fsm& machine, std::size_t a, std::size_t b )
{
  const auto& ta = machine.transitions[a];
  const auto& tb = machine.transitions[b];
  return "nondeterministic overlap: state '" + machine.states[ta.current] + "' has overlapping input cubes '" +
         ta.input_cube + "' and '" + tb.input_cube + "' with conflicting next state or outputs";
}

} // namespace

void validate_fsm( const fsm& machine )
{
  for ( std::size_t t = 0; t < machine.transitions.size(); ++t )
  {
    const auto& tr = machine.transitions[t];
    const auto where = "transition " + std::to_string( t ) + ": ";
    if ( tr.current >= machine.states.size() || tr.next >= machine.states.size() )
    {
      throw parse_error( 0, where + "state index out of range" );
    }
    if ( tr.input_cube.size() != machine.num_inputs || !is_cube( tr.input_cube ) )
    {
      throw parse_error( 0, where + "input cube '" + tr.input_cube + "' does not have " +
                                std::to_string( machine.num_inputs ) + " characters over {0,1,-}" );
    }
    if ( tr.output_cube.size() != machine.num_outputs || !is_cube( tr.output_cube ) )
    {
      throw parse_error( 0, where + "output cube '" + tr.output_cube + "' does not have " +
                                std::to_string( machine.num_outputs ) + " characters over {0,1,-}" );
    }
  }
  if ( machine.reset_state && *machine.reset_state >= machine.states.size() )
  {
    throw parse_error( 0, "reset state index out of range" );
  }

  if ( const auto conflict = first_conflict( machine ) )
  {
    throw parse_error( 0, conflict_message( machine, conflict->first, conflict->second ) );
  }
}

fsm parse_kiss2( std::istream& in, std::string name, std::vector<std::string>* warnings )
{
  std::optional<std::size_t> declared_inputs, declared_outputs, declared_states, declared_products;
  std::optional<std::pair<std::string, std::size_t>> reset_decl;
  std::vector<raw_transition> body;

  const auto warn = [&]( std::size_t line, const std::string& msg ) {
    if ( warnings )
    {
      warnings->push_back( line == 0 ? msg : "line " + std::to_string( line ) + ": " + msg );
    }
  };

  std::string buffer;
  std::size_t line_no = 0;
  while ( std::getline( in, buffer ) )
  {
    ++line_no;
    std::string_view line = buffer;
    if ( const auto hash = line.find( '#' ); hash != std::string_view::npos )
    {
      line = line.substr( 0, hash );
    }
    line = trim( line );
    if ( line.empty() )
    {
      continue;
    }
    const auto tokens = split( line );
    if ( tokens[0].front() == '.' )
    {
      const auto directive = tokens[0];
      if ( directive == ".e" || directive == ".end" )
      {
        break;
      }
      if ( directive == ".ilb" || directive == ".ob" || directive == ".type" || directive == ".model" ||
           directive == ".start_kiss" || directive == ".end_kiss" )
      {
        continue;
      }
      if ( tokens.size() != 2 )
      {
        throw parse_error( line_no, "directive " + std::string( directive ) + " expects one argument" );
      }
      if ( directive == ".i" )
      {
        declared_inputs = parse_count( tokens[1], line_no );
      }
      else if ( directive == ".o" )
      {
        declared_outputs = parse_count( tokens[1], line_no );
      }
      else if ( directive == ".s" )
      {
        declared_states = parse_count( tokens[1], line_no );
      }
      else if ( directive == ".p" )
      {
        declared_products = parse_count( tokens[1], line_no );
      }
      else if ( directive == ".r" )
      {
        reset_decl.emplace( std::string( tokens[1] ), line_no );
      }
      else
      {
        throw parse_error( line_no, "unknown directive " + std::string( directive ) );
      }
      continue;
    }

    if ( tokens.size() != 4 )
    {
      throw parse_error( line_no, "expected 'input current next output', got " + std::to_string( tokens.size() ) +
                                      " fields" );
    }
    if ( !is_cube( tokens[0] ) )
    {
      throw parse_error( line_no, "input cube '" + std::string( tokens[0] ) + "' has characters outside {0,1,-}" );
    }
    if ( !is_cube( tokens[3] ) )
    {
      throw parse_error( line_no, "output cube '" + std::string( tokens[3] ) + "' has characters outside {0,1,-}" );
    }
    for ( const auto state : { tokens[1], tokens[2] } )
    {
      if ( state == "*" || state == "-" )
      {
        throw parse_error( line_no, "unspecified state '" + std::string( state ) + "' is not supported" );
      }
    }
    body.push_back( { std::string( tokens[0] ), std::string( tokens[1] ), std::string( tokens[2] ),
                      std::string( tokens[3] ), line_no } );
  }

  if ( body.empty() )
  {
    throw parse_error( line_no, "no transitions" );
  }

  fsm machine;
  machine.name = std::move( name );
  machine.num_inputs = declared_inputs.value_or( body.front().input_cube.size() );
  machine.num_outputs = declared_outputs.value_or( body.front().output_cube.size() );

  std::unordered_map<std::string, std::size_t> index;
  const auto intern = [&]( const std::string& state ) {
    const auto [it, inserted] = index.try_emplace( state, machine.states.size() );
    if ( inserted )
    {
      machine.states.push_back( state );
    }
    return it->second;
  };

  std::vector<std::size_t> lines;
  for ( const auto& raw : body )
  {
    if ( raw.input_cube.size() != machine.num_inputs )
    {
      throw parse_error( raw.line, "input cube '" + raw.input_cube + "' has " +
                                       std::to_string( raw.input_cube.size() ) + " characters, expected " +
                                       std::to_string( machine.num_inputs ) );
    }
    if ( raw.output_cube.size() != machine.num_outputs )
    {
      throw parse_error( raw.line, "output cube '" + raw.output_cube + "' has " +
                                       std::to_string( raw.output_cube.size() ) + " characters, expected " +
                                       std::to_string( machine.num_outputs ) );
    }
    const auto current = intern( raw.current );
    const auto next = intern( raw.next );
    machine.transitions.push_back( { raw.input_cube, current, next, raw.output_cube } );
    lines.push_back( raw.line );
  }

  if ( declared_states && *declared_states != machine.states.size() )
  {
    throw parse_error( 0, ".s declares " + std::to_string( *declared_states ) + " states but the body uses " +
                              std::to_string( machine.states.size() ) );
  }
  if ( declared_products && *declared_products != machine.transitions.size() )
  {
    warn( 0, ".p declares " + std::to_string( *declared_products ) + " products but the body has " +
                 std::to_string( machine.transitions.size() ) );
  }

  if ( reset_decl )
  {
    const auto reset = machine.find_state( reset_decl->first );
    if ( !reset )
    {
      throw parse_error( reset_decl->second, "reset state '" + reset_decl->first + "' does not appear in the body" );
    }
    machine.reset_state = *reset;
  }
  else
  {
    machine.reset_state = 0u;
  }

  if ( const auto conflict = first_conflict( machine ) )
  {
    throw parse_error( lines[conflict->second], conflict_message( machine, conflict->first, conflict->second ) );
  }
  validate_fsm( machine );
  return machine;
}

fsm parse_kiss2( std::string_view text, std::string name, std::vector<std::string>* warnings )
{
  std::istringstream in{ std::string( text ) };
  return parse_kiss2( in, std::move( name ), warnings );
}

fsm read_kiss2( const std::filesystem::path& path, std::vector<std::string>* warnings )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw parse_error( 0, "cannot open '" + path.string() + "'" );
  }
  return parse_kiss2( in, path.stem().string(), warnings );
}

} // namespace fsmcgp
