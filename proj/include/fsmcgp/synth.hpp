#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <fsmcgp/cgp.hpp>
#include <fsmcgp/encoding.hpp>
#include <fsmcgp/evaluator.hpp>
#include <fsmcgp/evolution.hpp>
#include <fsmcgp/fsm.hpp>
#include <fsmcgp/netlist.hpp>
#include <fsmcgp/truth_table.hpp>

namespace fsmcgp
{

/// Builtin detector name, or a path to a KISS2 file.
fsm load_benchmark( std::string_view name_or_path, std::vector<std::string>* warnings = nullptr );

struct synth_options
{
  unsigned m = 0;
  unsigned lambda = 4;
  double mu_r = 10.0;
  std::uint64_t seed = 1;
  std::uint64_t max_generations = 10'000'000;
  std::uint64_t snapshot_stride = 100'000;
  mutation_mode mode = mutation_mode::redraw;
  unsigned repeat = 1; ///< seeds seed .. seed + repeat - 1, best one kept
  unsigned jobs = 1;
  std::size_t cosim_stimuli = 100;
  std::size_t cosim_cycles = 50;
};

struct synth_artifacts
{
  std::string genotype;
  std::string blif;
  std::string dot;
  std::string report; ///< ends with the `wall_time_s:` line
  std::string csv_row;
};

struct synth_result
{
  evolution_report best;
  std::vector<evolution_report> runs;
  truth_table table;
  gate_netlist netlist;
  fsm_netlist machine_netlist;
  fitness packed;
  fitness scalar;
  verification_report verification;
  std::size_t cosim_divergences = 0;
  std::size_t cosim_runs = 0;
  synth_artifacts artifacts;

  /// Packed, scalar and netlist interpreters report the same mismatch count.
  bool oracles_agree() const noexcept
  {
    return packed.mismatches == scalar.mismatches && packed.mismatches == verification.mismatches.size();
  }
  bool verified() const noexcept { return best.solved && oracles_agree() && verification.passed() && cosim_divergences == 0; }
};

/*! \brief Evolves, verifies and renders one machine.
 *
 * Runs `repeat` evolutions, keeps the solved run with the fewest gates
 * (lowest seed on ties, or the lowest seed overall when none solved),
 * re-evaluates it with all three interpreters, co-simulates solved
 * machines on random stimuli, and renders the artifacts. Everything except
 * the `wall_time_s` line of the report and the last CSV column is
 * deterministic in (machine, encoding, options).
 */
synth_result synthesize( const fsm& machine, const state_encoding& enc, const synth_options& options );

} // namespace fsmcgp
