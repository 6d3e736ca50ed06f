#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <fsmcgp/cgp.hpp>
#include <fsmcgp/truth_table.hpp>

namespace fsmcgp
{

/// One grid line: a benchmark and parameter tuple, run for `seeds` seeds.
struct sweep_cell
{
  std::string benchmark;
  unsigned lambda = 4;
  unsigned m = 0;
  double mu_r = 10.0;
  unsigned seeds = 1;
};

struct sweep_run
{
  sweep_cell cell;
  std::uint64_t seed = 0;
  bool solved = false;
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  std::size_t active_nodes = 0;
  double wall_time_s = 0.0;
};

/// Per-cell summary. Medians and minima are over solved runs only.
struct sweep_aggregate
{
  sweep_cell cell;
  std::size_t runs = 0;
  std::size_t solved = 0;
  std::optional<double> median_generations;
  std::optional<double> median_evaluations;
  std::optional<std::size_t> min_nodes;
  std::optional<double> median_nodes;

  double solve_rate() const { return runs == 0 ? 0.0 : static_cast<double>( solved ) / static_cast<double>( runs ); }
};

struct sweep_result
{
  std::vector<sweep_run> runs;             ///< grid order, then seed order
  std::vector<sweep_aggregate> aggregates; ///< grid order
};

struct sweep_options
{
  std::uint64_t max_generations = 10'000'000;
  std::uint64_t first_seed = 1; ///< seeds of a cell are first_seed .. first_seed + seeds - 1
  unsigned jobs = 1;
  mutation_mode mode = mutation_mode::redraw;
};

class sweep_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Runs every (cell, seed) pair.
 *
 * The grid is checked before anything runs: it must be non-empty, every
 * benchmark must be present in `tables`, and every cell needs at least one
 * seed. Unsolved runs are recorded, never fatal. Up to `jobs` runs execute
 * concurrently; the result does not depend on `jobs` except for wall times.
 */
sweep_result run_sweep( const std::map<std::string, truth_table>& tables, std::span<const sweep_cell> grid,
                        const sweep_options& options );

/// Grid CSV with header `benchmark,lambda,m,mu_r,seeds`.
std::vector<sweep_cell> parse_grid( std::istream& in );

inline constexpr const char* detail_csv_header =
    "benchmark,lambda,m,mu_r,seed,solved,generations,evaluations,active_nodes,wall_time_s";
inline constexpr const char* aggregate_csv_header =
    "benchmark,lambda,m,mu_r,runs,solved,solve_rate,median_generations,median_evaluations,min_nodes,median_nodes";

/// Detail CSV row (no newline) in `detail_csv_header` column order.
std::string detail_csv_row( const sweep_run& run );

void write_detail_csv( std::ostream& out, const sweep_result& result );
void write_aggregate_csv( std::ostream& out, const sweep_result& result );

/// Shortest round-trip decimal for a mutation rate ("10", "3.5").
std::string format_rate( double value );

} // namespace fsmcgp
