#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <fsmcgp/cgp.hpp>
#include <fsmcgp/truth_table.hpp>

namespace fsmcgp
{

/// Error of a candidate circuit. `rmse = sqrt(mismatches / total_care)`.
struct fitness
{
  std::uint64_t mismatches = 0;
  double rmse = 0.0;

  bool operator==( const fitness& ) const = default;
};

double rmse_of( std::uint64_t mismatches, std::uint64_t total_care );

/// Largest variable count `pack_table` accepts.
inline constexpr unsigned max_packed_vars = 24;

/*! \brief Truth table transposed into 64-bit bit-columns.
 *
 * Bit r of input column v is bit v of r, so column v repeats with period
 * 2^(v+1). Padding rows past the end of a short table continue the periodic
 * input pattern but have care = 0.
 */
class packed_table
{
public:
  static constexpr unsigned word_width = 64;

  unsigned num_vars() const noexcept { return num_vars_; }
  unsigned num_outs() const noexcept { return num_outs_; }
  std::size_t words_per_col() const noexcept { return words_; }
  std::uint64_t total_care() const noexcept { return total_care_; }

  std::span<const std::uint64_t> input_col( unsigned v ) const { return { inputs_.data() + v * words_, words_ }; }
  std::span<const std::uint64_t> desired_col( unsigned c ) const { return { desired_.data() + c * words_, words_ }; }
  std::span<const std::uint64_t> care_col( unsigned c ) const { return { care_.data() + c * words_, words_ }; }

  friend packed_table pack_table( const truth_table& tt );

private:
  unsigned num_vars_ = 0;
  unsigned num_outs_ = 0;
  std::size_t words_ = 0;
  std::uint64_t total_care_ = 0;
  std::vector<std::uint64_t> inputs_;
  std::vector<std::uint64_t> desired_;
  std::vector<std::uint64_t> care_;
};

/// Throws std::length_error when `tt.num_vars > max_packed_vars`.
packed_table pack_table( const truth_table& tt );

/*! \brief Word-parallel evaluator with reusable scratch space.
 *
 * Only active nodes are computed. NAND is `~(a & b)`, NOR is `~(a | b)`;
 * mismatches are `popcount((out ^ desired) & care)` summed over all output
 * words, so garbage in padding bits never counts.
 */
class packed_evaluator
{
public:
  explicit packed_evaluator( const packed_table& table );

  fitness operator()( const genotype& g );

  /// Evaluates with an already decoded active set.
  fitness operator()( const genotype& g, std::span<const std::uint32_t> active );

private:
  const packed_table* table_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::uint32_t> active_;
};

/// One-shot packed evaluation. Throws std::invalid_argument on a shape mismatch.
fitness evaluate( const genotype& g, const packed_table& table );

/// Row-at-a-time reference interpreter over the decoded phenotype.
fitness evaluate_scalar( const genotype& g, const truth_table& tt );

} // namespace fsmcgp
