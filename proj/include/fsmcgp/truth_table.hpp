#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <fsmcgp/encoding.hpp>
#include <fsmcgp/fsm.hpp>

namespace fsmcgp
{

/*! \brief Fully expanded combinational specification of an FSM's next-state
 *         and output logic.
 *
 * Row convention: bit v of the row index is variable v. The low
 * `num_state_bits` variables are the current-state bits (variable k is
 * state-code bit k); above them come the primary inputs, the first declared
 * input being the most significant bit. Printing a row index in binary, most
 * significant bit first, therefore reads "inputs in declaration order, then
 * the state code".
 *
 * Column convention: columns 0..num_state_bits-1 are next-state bits
 * (column k is next-state code bit k), followed by the primary outputs in
 * declaration order.
 *
 * `desired` and `care` are row-major with one byte per bit.
 */
struct truth_table
{
  unsigned num_primary_inputs = 0;
  unsigned num_state_bits = 0;
  unsigned num_primary_outputs = 0;
  unsigned num_vars = 0;
  unsigned num_outs = 0;
  std::vector<std::uint8_t> desired;
  std::vector<std::uint8_t> care;

  /// Empty (all don't-care) table with the given dimensions.
  static truth_table with_shape( unsigned primary_inputs, unsigned state_bits, unsigned primary_outputs );

  std::size_t num_rows() const noexcept { return std::size_t{ 1 } << num_vars; }

  bool desired_bit( std::size_t row, unsigned col ) const { return desired[row * num_outs + col] != 0; }
  bool care_bit( std::size_t row, unsigned col ) const { return care[row * num_outs + col] != 0; }
  void set( std::size_t row, unsigned col, bool value, bool cares = true )
  {
    desired[row * num_outs + col] = value;
    care[row * num_outs + col] = cares;
  }

  /// Variable index of primary input i (declaration order).
  unsigned input_var( unsigned i ) const noexcept { return num_state_bits + num_primary_inputs - 1u - i; }
  /// Variable index of current-state bit k.
  unsigned state_var( unsigned k ) const noexcept { return k; }
  /// Column of next-state bit k.
  unsigned next_state_col( unsigned k ) const noexcept { return k; }
  /// Column of primary output j.
  unsigned output_col( unsigned j ) const noexcept { return num_state_bits + j; }

  std::size_t care_count() const;
  bool row_has_care( std::size_t row ) const;

  bool operator==( const truth_table& ) const = default;
};

/// Largest variable count `build_truth_table` will expand.
inline constexpr unsigned max_truth_table_vars = 24;

/*! \brief Expands the machine under `enc` into its combinational truth table.
 *
 * Rows whose state bits are an unused code, and rows where no transition of
 * the current state matches the inputs, are entirely don't-care. Output-cube
 * '-' characters are don't-cares. When several overlapping transitions match
 * a row, their specified output bits are merged (they agree by validation).
 */
truth_table build_truth_table( const fsm& machine, const state_encoding& enc );

/*! \brief Writes the table as an espresso PLA (type fr).
 *
 * Format, byte for byte:
 *
 *     .i <num_vars>\n
 *     .o <num_outs>\n
 *     .p <rows with any care bit>\n
 *     <row index in binary, MSB first> <one char per column: 0, 1 or ->\n   (per row, ascending)
 *     .e\n
 *
 * Rows without any care bit are omitted.
 */
std::string export_pla( const truth_table& tt );
void write_pla( std::ostream& out, const truth_table& tt );

} // namespace fsmcgp
