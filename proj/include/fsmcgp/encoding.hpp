#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fsmcgp/fsm.hpp>

namespace fsmcgp
{

enum class encoding_scheme
{
  natural_binary, ///< state i gets code i
  gray,           ///< state i gets code i ^ (i >> 1)
  explicit_map    ///< codes supplied by the user
};

std::string_view to_string( encoding_scheme scheme );
std::optional<encoding_scheme> encoding_scheme_from_string( std::string_view name );

/// Binary state assignment. Bit k of `codes[s]` drives flip-flop k.
struct state_encoding
{
  unsigned width = 1;
  encoding_scheme scheme = encoding_scheme::natural_binary;
  std::vector<std::uint32_t> codes;

  /// State whose code is `code`, if any.
  std::optional<std::size_t> state_of( std::uint32_t code ) const;

  /// Code as a string of `width` characters, most significant bit first.
  std::string code_string( std::size_t state ) const;

  bool operator==( const state_encoding& ) const = default;
};

class encoding_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// ceil(log2(num_states)), at least 1.
unsigned state_bits_for( std::size_t num_states );

/// Natural-binary or Gray assignment in state order.
state_encoding encode_states( const fsm& machine, encoding_scheme scheme = encoding_scheme::natural_binary );

/*! \brief Assignment from an explicit map of state name to binary code string.
 *
 * Every state must be present, every code must have exactly
 * `state_bits_for(|states|)` characters, and no two states may share a code.
 */
state_encoding encode_states( const fsm& machine, const std::map<std::string, std::string>& explicit_codes );

/// Reads `STATE CODE` pairs, one per line; `#` starts a comment.
std::map<std::string, std::string> parse_encoding_map( std::istream& in );

} // namespace fsmcgp
