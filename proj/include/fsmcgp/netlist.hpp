#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fsmcgp/cgp.hpp>
#include <fsmcgp/encoding.hpp>
#include <fsmcgp/fsm.hpp>
#include <fsmcgp/truth_table.hpp>

namespace fsmcgp
{

enum class gate_kind : std::uint8_t
{
  nand,
  nor
};

std::string_view to_string( gate_kind kind );

/*! \brief Two-input gate. Sources are signal addresses: inputs come first,
 *         gate k has address `inputs.size() + k`.
 */
struct gate
{
  gate_kind kind;
  std::size_t src1;
  std::size_t src2;

  bool operator==( const gate& ) const = default;
};

/*! \brief Combinational NAND/NOR network in topological order.
 *
 * `input_vars[i]` is the truth-table variable read by input i, and output c
 * realizes truth-table column c. Gates are named `g<k>`.
 */
struct gate_netlist
{
  std::vector<std::string> inputs;
  std::vector<unsigned> input_vars;
  std::vector<gate> gates;
  std::vector<std::string> outputs;
  std::vector<std::size_t> output_sources;

  std::size_t gate_count() const noexcept { return gates.size(); }
  std::string signal_name( std::size_t address ) const;

  bool operator==( const gate_netlist& ) const = default;
};

/*! \brief Names and listing order of the netlist signals.
 *
 * `inputs` lists the variables in netlist order, each with its name;
 * `outputs[c]` names column c.
 */
struct signal_naming
{
  struct named_var
  {
    unsigned var;
    std::string name;
  };
  std::vector<named_var> inputs;
  std::vector<std::string> outputs;

  /// `in<i>` for primary inputs, `s<k>` for state bits, `ns<k>` and `out<j>` for outputs.
  static signal_naming for_table( const truth_table& tt );
  /// `x<v>` inputs in variable order and `y<c>` outputs.
  static signal_naming generic( unsigned num_vars, unsigned num_outs );
};

/// One gate per active node, numbered in column order.
gate_netlist to_netlist( const phenotype& p, const genotype& g, const signal_naming& names );

struct row_mismatch
{
  std::size_t row;
  unsigned output;

  bool operator==( const row_mismatch& ) const = default;
};

struct verification_report
{
  std::size_t rows_checked = 0;
  std::uint64_t care_bits = 0;
  std::vector<row_mismatch> mismatches;

  bool passed() const noexcept { return mismatches.empty(); }

  /// `PASS` or one `FAIL <row> <output>` line per mismatch, then a summary line.
  void write( std::ostream& out, const gate_netlist& netlist ) const;
};

/// Gate-by-gate interpretation of `n` over every row of `tt`.
verification_report verify_netlist( const gate_netlist& n, const truth_table& tt );

/// Rising-edge D flip-flop.
struct latch
{
  std::size_t next_state_output; ///< index into core.outputs
  std::size_t state_input;       ///< index into core.inputs
  bool init;
};

/// Combinational core closed by one latch per state bit; latch k holds state bit k.
struct fsm_netlist
{
  std::string model;
  gate_netlist core;
  std::vector<latch> latches;
  std::vector<std::size_t> primary_inputs;  ///< core input indices, declaration order
  std::vector<std::size_t> primary_outputs; ///< core output indices, declaration order
  std::vector<std::pair<std::string, std::string>> state_codes; ///< state name, code (MSB first)

  std::size_t gate_count() const noexcept { return core.gate_count(); }
};

class netlist_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Adds the state latches to a core built with `signal_naming::for_table`.
 *
 * Throws netlist_error when the machine has no reset state or the core does
 * not have the expected inputs and outputs.
 */
fsm_netlist assemble_fsm( const gate_netlist& core, const state_encoding& enc, const fsm& machine );

struct simulation_report
{
  std::size_t cycles = 0;
  std::size_t compared_cycles = 0;
  std::vector<std::size_t> unconstrained_cycles; ///< no transition matched, or state lost
  std::optional<std::size_t> divergence_cycle;
  std::string divergence;
  std::vector<std::string> output_trace; ///< gate-level primary outputs per cycle

  bool passed() const noexcept { return !divergence_cycle.has_value(); }
  void write( std::ostream& out ) const;
};

/*! \brief Co-simulates the gate-level machine and the symbolic machine from reset.
 *
 * Cycle t applies `stimulus[t]` (a string of n_pi characters over {0,1}),
 * compares every specified output bit and the next-state code, then clocks
 * both machines. A cycle whose symbolic state has no matching transition is
 * recorded as unconstrained; the symbolic machine then follows the gate-level
 * state if it decodes to a declared state, otherwise all later cycles are
 * unconstrained too.
 */
simulation_report simulate_fsm( const fsm_netlist& fn, const fsm& machine, const state_encoding& enc,
                                std::span<const std::string> stimulus );

/// `count` uniformly random input vectors of `width` bits.
std::vector<std::string> random_stimulus( std::size_t width, std::size_t count, rng& gen );

/*! \brief BLIF writer.
 *
 *     # state <name> <code>              (one per state, fsm netlists only)
 *     .model <name>
 *     .inputs <primary inputs>
 *     .outputs <primary outputs>
 *     .clock clk                         (fsm netlists only)
 *     .latch ns<k> s<k> re clk <init>    (one per state bit)
 *     .names <a> <b> g<k>                NAND: "0- 1" and "-0 1"; NOR: "00 1"
 *     .names <src> <output>              buffer "1 1", one per output
 *     .end
 *
 * For a bare gate_netlist every input and output is a port.
 */
std::string export_blif( const fsm_netlist& fn );
std::string export_blif( const gate_netlist& n, std::string_view model );

/*! \brief Reads the BLIF subset written by `export_blif`.
 *
 * Latch outputs become state inputs in latch order and latch inputs become
 * next-state outputs; the result maps them onto truth-table variables and
 * columns like `signal_naming::for_table`. Without latches, inputs named
 * `x<v>` map to variable v, otherwise inputs `in<i>` and `s<k>` follow the
 * table convention.
 */
fsm_netlist read_blif( std::istream& in );
fsm_netlist parse_blif( std::string_view text );

/// Graphviz rendering: NAND/NOR shapes, latches as boxes, ports as arrows.
std::string export_dot( const fsm_netlist& fn );
std::string export_dot( const gate_netlist& n, std::string_view name );

/// Static CMOS 2-input NAND/NOR.
inline constexpr unsigned transistors_per_gate = 4;

/*! \brief 100 * (baseline - cgp) / baseline, truncated toward zero to hundredths.
 *
 * Throws std::invalid_argument for a zero baseline.
 */
double reduction_percent( std::size_t baseline_gates, std::size_t cgp_gates );

/// `reduction_percent` with exactly two decimals.
std::string format_reduction( std::size_t baseline_gates, std::size_t cgp_gates );

} // namespace fsmcgp
