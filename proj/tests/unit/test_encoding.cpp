#include <doctest.h>

#include <bit>
#include <map>
#include <set>
#include <sstream>

#include <fsmcgp/encoding.hpp>
#include <fsmcgp/rng.hpp>

using namespace fsmcgp;

namespace
{

fsm chain( std::size_t n )
{
  fsm m;
  m.name = "chain";
  m.num_inputs = 1;
  m.num_outputs = 1;
  for ( std::size_t s = 0; s < n; ++s )
  {
    m.states.push_back( "q" + std::to_string( s ) );
    m.transitions.push_back( { "-", s, ( s + 1 ) % n, "0" } );
  }
  m.reset_state = 0u;
  return m;
}

} // namespace

TEST_SUITE( "encoding" )
{
  TEST_CASE( "state bit counts" )
  {
    CHECK( state_bits_for( 1 ) == 1u );
    CHECK( state_bits_for( 2 ) == 1u );
    CHECK( state_bits_for( 3 ) == 2u );
    CHECK( state_bits_for( 7 ) == 3u );
    CHECK( state_bits_for( 8 ) == 3u );
    CHECK( state_bits_for( 9 ) == 4u );
    CHECK( state_bits_for( 64 ) == 6u );
    CHECK( state_bits_for( 65 ) == 7u );
  }

  TEST_CASE( "natural binary for seven states" )
  {
    const auto enc = encode_states( chain( 7 ) );
    CHECK( enc.width == 3u );
    CHECK( enc.code_string( 0 ) == "000" );
    CHECK( enc.code_string( 6 ) == "110" );
    CHECK( enc.state_of( 6 ) == 6u );
    CHECK_FALSE( enc.state_of( 7 ).has_value() );
  }

  TEST_CASE( "nine states leave seven codes unused" )
  {
    const auto enc = encode_states( chain( 9 ) );
    CHECK( enc.width == 4u );
    CHECK( enc.code_string( 8 ) == "1000" );
    int unused = 0;
    for ( std::uint32_t c = 0; c < 16u; ++c )
    {
      unused += enc.state_of( c ) ? 0 : 1;
    }
    CHECK( unused == 7 );
  }

  TEST_CASE( "gray codes differ in one bit between neighbours" )
  {
    const auto enc = encode_states( chain( 8 ), encoding_scheme::gray );
    for ( std::size_t s = 1; s < 8; ++s )
    {
      CHECK( std::popcount( enc.codes[s] ^ enc.codes[s - 1] ) == 1 );
    }
    CHECK( enc.code_string( 2 ) == "011" );
  }

  TEST_CASE( "every scheme is injective and fits its width for 1..64 states" )
  {
    rng gen( 5 );
    for ( int trial = 0; trial < 200; ++trial )
    {
      const auto n = 1u + gen.below( 64 );
      const auto m = chain( n );
      for ( const auto scheme : { encoding_scheme::natural_binary, encoding_scheme::gray } )
      {
        const auto enc = encode_states( m, scheme );
        CHECK( enc.width == state_bits_for( n ) );
        std::set<std::uint32_t> seen( enc.codes.begin(), enc.codes.end() );
        CHECK( seen.size() == n );
        CHECK( *seen.rbegin() < ( 1u << enc.width ) );
      }
      // random explicit permutation of the code space
      std::vector<std::uint32_t> pool( 1u << state_bits_for( n ) );
      for ( std::uint32_t c = 0; c < pool.size(); ++c )
      {
        pool[c] = c;
      }
      for ( std::size_t i = pool.size(); i > 1; --i )
      {
        std::swap( pool[i - 1], pool[gen.below( i )] );
      }
      std::map<std::string, std::string> map;
      const auto width = state_bits_for( n );
      for ( std::size_t s = 0; s < n; ++s )
      {
        std::string code( width, '0' );
        for ( unsigned b = 0; b < width; ++b )
        {
          code[width - 1 - b] = ( ( pool[s] >> b ) & 1u ) ? '1' : '0';
        }
        map[m.states[s]] = code;
      }
      const auto enc = encode_states( m, map );
      for ( std::size_t s = 0; s < n; ++s )
      {
        CHECK( enc.codes[s] == pool[s] );
        CHECK( enc.state_of( pool[s] ) == s );
      }
    }
  }

  TEST_CASE( "explicit maps are checked" )
  {
    const auto m = chain( 3 );
    CHECK_THROWS_AS( encode_states( m, { { "q0", "00" }, { "q1", "01" }, { "q2", "01" } } ), encoding_error );
    CHECK_THROWS_AS( encode_states( m, { { "q0", "00" }, { "q1", "01" }, { "q2", "100" } } ), encoding_error );
    CHECK_THROWS_AS( encode_states( m, { { "q0", "00" }, { "q1", "01" } } ), encoding_error );
    CHECK_THROWS_AS( encode_states( m, { { "q0", "00" }, { "q1", "01" }, { "q2", "1x" } } ), encoding_error );
    CHECK_THROWS_AS( encode_states( m, { { "q0", "00" }, { "q1", "01" }, { "q2", "10" }, { "zz", "11" } } ),
                     encoding_error );
    const auto enc = encode_states( m, { { "q0", "11" }, { "q1", "00" }, { "q2", "10" } } );
    CHECK( enc.scheme == encoding_scheme::explicit_map );
    CHECK( enc.codes == std::vector<std::uint32_t>{ 3u, 0u, 2u } );
  }

  TEST_CASE( "encoding map files" )
  {
    std::istringstream in( "# codes\nq0 11\n\nq1 00 # idle\nq2 10\n" );
    const auto map = parse_encoding_map( in );
    CHECK( map.size() == 3u );
    CHECK( map.at( "q1" ) == "00" );
  }

  TEST_CASE( "scheme names" )
  {
    CHECK( encoding_scheme_from_string( "natural-binary" ) == encoding_scheme::natural_binary );
    CHECK( encoding_scheme_from_string( "gray" ) == encoding_scheme::gray );
    CHECK_FALSE( encoding_scheme_from_string( "onehot" ).has_value() );
    CHECK( to_string( encoding_scheme::gray ) == "gray" );
  }
}
