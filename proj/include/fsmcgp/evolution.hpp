#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <fsmcgp/cgp.hpp>
#include <fsmcgp/evaluator.hpp>
#include <fsmcgp/rng.hpp>
#include <fsmcgp/truth_table.hpp>

namespace fsmcgp
{

struct evolve_config
{
  unsigned lambda = 4;
  std::uint64_t max_generations = 10'000'000;
  std::uint64_t seed = 1;
  std::uint64_t snapshot_stride = 100'000; ///< 0 records improvements only
};

struct trace_point
{
  std::uint64_t generation;
  std::uint64_t mismatches;
  double rmse;

  bool operator==( const trace_point& ) const = default;
};

struct evolution_report
{
  bool solved = false;
  std::uint64_t generations_used = 0;
  std::uint64_t evaluations = 0; ///< lambda * generations_used
  std::vector<trace_point> best_trace;
  genotype final_genotype;
  fitness final_fitness;
  std::size_t active_nodes = 0;
  std::uint64_t seed = 0;
  cgp_params params;
  evolve_config config;
  double wall_time_s = 0.0;
};

/*! \brief (1+lambda) selection.
 *
 * Returns the index of the offspring that becomes the next parent, or
 * nullopt when the parent survives. The parent survives only when it is
 * strictly better than every offspring. Otherwise the offspring with the
 * least error win; when several tie, one of them is drawn with
 * `gen.below(number_of_tied)` in offspring order, and no random number is
 * consumed when exactly one offspring is best.
 */
std::optional<std::size_t> select_parent( std::uint64_t parent_mismatches,
                                          std::span<const std::uint64_t> offspring_mismatches, rng& gen );

/*! \brief Evolves a circuit for `tt` with the (1+lambda) strategy.
 *
 * Generation 0 draws a random parent. Every later generation mutates the
 * parent lambda times and applies `select_parent`. The run stops at zero
 * mismatches or after `max_generations` generations. The random stream is
 * consumed in this order: the initial genotype, then per generation each
 * offspring's mutations in offspring order, then the tie draw if any. The
 * report, apart from `wall_time_s`, is a pure function of its inputs.
 */
evolution_report evolve( const truth_table& tt, const cgp_params& params, const evolve_config& cfg );

/// Same, reusing an already packed table.
evolution_report evolve( const packed_table& table, const cgp_params& params, const evolve_config& cfg );

} // namespace fsmcgp
