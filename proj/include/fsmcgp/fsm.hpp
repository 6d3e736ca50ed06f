#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fsmcgp
{

/// One row of a symbolic state table. Cubes are strings over {0,1,-}.
struct transition
{
  std::string input_cube;
  std::size_t current = 0;
  std::size_t next = 0;
  std::string output_cube;

  bool operator==( const transition& ) const = default;
};

/// Symbolic Mealy/Moore machine as read from KISS2.
struct fsm
{
  std::string name;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  std::vector<std::string> states;
  std::optional<std::size_t> reset_state;
  std::vector<transition> transitions;

  std::optional<std::size_t> find_state( std::string_view state_name ) const;
};

/// Malformed KISS2 input. `line()` is 1-based, 0 when not tied to a line.
class parse_error : public std::runtime_error
{
public:
  parse_error( std::size_t line, const std::string& message );

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// true iff two cubes of equal length share at least one minterm.
bool cubes_intersect( std::string_view a, std::string_view b );

/// true iff `bits` (a string over {0,1}) lies inside `cube`.
bool cube_contains( std::string_view cube, std::string_view bits );

/*! \brief Checks the structural invariants of an fsm.
 *
 * State references must resolve, cube widths must agree with the declared
 * counts, and two transitions leaving the same state may only overlap when
 * they agree on the next state and on every output bit both specify.
 * Throws parse_error (line 0) describing the first violation.
 */
void validate_fsm( const fsm& machine );

/*! \brief Parses a KISS2 state table.
 *
 * Recognized directives are `.i`, `.o`, `.s`, `.p`, `.r` and `.e`/`.end`;
 * `.ilb`, `.ob`, `.type`, `.model`, `.start_kiss` and `.end_kiss` are
 * ignored. `#` starts a comment. States are numbered in order of first
 * appearance in the body; the reset state defaults to the first one.
 * A `.p` count that disagrees with the body only produces a warning.
 */
fsm parse_kiss2( std::istream& in, std::string name = "fsm", std::vector<std::string>* warnings = nullptr );

fsm parse_kiss2( std::string_view text, std::string name = "fsm", std::vector<std::string>* warnings = nullptr );

/// Reads a KISS2 file; the machine is named after the file stem.
fsm read_kiss2( const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr );

} // namespace fsmcgp
