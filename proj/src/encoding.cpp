#include <fsmcgp/encoding.hpp>

#include <algorithm>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace fsmcgp
{

std::string_view to_string( encoding_scheme scheme )
{
  switch ( scheme )
  {
  case encoding_scheme::natural_binary:
    return "natural-binary";
  case encoding_scheme::gray:
    return "gray";
  case encoding_scheme::explicit_map:
    return "explicit";
  }
  return "unknown";
}

std::optional<encoding_scheme> encoding_scheme_from_string( std::string_view name )
{
  if ( name == "natural-binary" || name == "natural" || name == "binary" )
  {
    return encoding_scheme::natural_binary;
  }
  if ( name == "gray" )
  {
    return encoding_scheme::gray;
  }
  if ( name == "explicit" )
  {
    return encoding_scheme::explicit_map;
  }
  return std::nullopt;
}

std::optional<std::size_t> state_encoding::state_of( std::uint32_t code ) const
{
  const auto it = std::find( codes.begin(), codes.end(), code );
  if ( it == codes.end() )
  {
    return std::nullopt;
  }
  return static_cast<std::size_t>( it - codes.begin() );
}

std::string state_encoding::code_string( std::size_t state ) const
{
  std::string bits( width, '0' );
  for ( unsigned k = 0; k < width; ++k )
  {
    if ( ( codes.at( state ) >> k ) & 1u )
    {
      bits[width - 1 - k] = '1';
    }
  }
  return bits;
}

unsigned state_bits_for( std::size_t num_states )
{
  unsigned width = 1;
  while ( ( std::size_t{ 1 } << width ) < num_states )
  {
    ++width;
  }
  return width;
}

state_encoding encode_states( const fsm& machine, encoding_scheme scheme )
{
  if ( scheme == encoding_scheme::explicit_map )
  {
    throw encoding_error( "explicit encoding requires a state-to-code map" );
  }
  state_encoding enc;
  enc.scheme = scheme;
  enc.width = state_bits_for( machine.states.size() );
  enc.codes.reserve( machine.states.size() );
  for ( std::uint32_t i = 0; i < machine.states.size(); ++i )
  {
    enc.codes.push_back( scheme == encoding_scheme::gray ? i ^ ( i >> 1 ) : i );
  }
  return enc;
}

state_encoding encode_states( const fsm& machine, const std::map<std::string, std::string>& explicit_codes )
{
  state_encoding enc;
  enc.scheme = encoding_scheme::explicit_map;
  enc.width = state_bits_for( machine.states.size() );

  for ( const auto& [state, code] : explicit_codes )
  {
    if ( !machine.find_state( state ) )
    {
      throw encoding_error( "encoding names unknown state '" + state + "'" );
    }
  }

  std::unordered_set<std::uint32_t> used;
  for ( const auto& state : machine.states )
  {
    const auto it = explicit_codes.find( state );
    if ( it == explicit_codes.end() )
    {
      throw encoding_error( "no code given for state '" + state + "'" );
    }
    const auto& bits = it->second;
    if ( bits.size() != enc.width )
    {
      throw encoding_error( "code '" + bits + "' for state '" + state + "' has width " +
                            std::to_string( bits.size() ) + ", expected " + std::to_string( enc.width ) );
    }
    std::uint32_t code = 0;
    for ( const char c : bits )
    {
      if ( c != '0' && c != '1' )
      {
        throw encoding_error( "code '" + bits + "' for state '" + state + "' is not binary" );
      }
      code = ( code << 1 ) | static_cast<std::uint32_t>( c == '1' );
    }
    if ( !used.insert( code ).second )
    {
      throw encoding_error( "code '" + bits + "' is assigned to more than one state" );
    }
    enc.codes.push_back( code );
  }
  return enc;
}

std::map<std::string, std::string> parse_encoding_map( std::istream& in )
{
  std::map<std::string, std::string> codes;
  std::string line;
  std::size_t line_no = 0;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( const auto hash = line.find( '#' ); hash != std::string::npos )
    {
      line.erase( hash );
    }
    std::istringstream fields( line );
    std::string state, code, extra;
    if ( !( fields >> state ) )
    {
      continue;
    }
    if ( !( fields >> code ) || ( fields >> extra ) )
    {
      throw encoding_error( "line " + std::to_string( line_no ) + ": expected 'STATE CODE'" );
    }
    if ( !codes.emplace( state, code ).second )
    {
      throw encoding_error( "line " + std::to_string( line_no ) + ": state '" + state + "' listed twice" );
    }
  }
  return codes;
}

} // namespace fsmcgp
