#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fsmcgp/rng.hpp>

namespace fsmcgp
{

/*! \brief Node function table. The gene value is the table index. */
enum class gate_function : std::uint8_t
{
  nand = 0,
  nor = 1
};

inline constexpr unsigned function_count = 2;
inline constexpr unsigned node_arity = 2;
inline constexpr unsigned genes_per_node = node_arity + 1u;

std::string_view to_string( gate_function f );

constexpr bool node_eval( gate_function f, bool x, bool y ) noexcept
{
  return f == gate_function::nand ? !( x && y ) : !( x || y );
}

enum class mutation_mode
{
  redraw,       ///< new value drawn from the full range, may equal the old one
  strict_change ///< redraw until the value differs (when the range allows it)
};

/*! \brief Shape of a single-row CGP graph over the NAND/NOR table.
 *
 * Rows are fixed at 1 and levels-back equals the column count, so any node
 * may read any program input or any node to its left.
 */
struct cgp_params
{
  unsigned num_inputs = 0;
  unsigned num_outputs = 0;
  unsigned columns = 0;            ///< node budget m
  double mutation_rate = 10.0;     ///< percent of the gene count, in (0, 100]
  mutation_mode mode = mutation_mode::redraw;

  static constexpr unsigned rows() noexcept { return 1u; }
  unsigned levels_back() const noexcept { return columns; }
  std::size_t gene_count() const noexcept { return std::size_t{ genes_per_node } * columns + num_outputs; }
  /// Number of signal addresses: program inputs followed by node outputs.
  std::size_t address_count() const noexcept { return std::size_t{ num_inputs } + columns; }

  /// Point mutations per offspring: max(1, round(rate/100 * gene_count)), halves away from zero.
  std::size_t mutation_count() const;

  /// Throws std::invalid_argument when the parameters are unusable.
  void validate() const;

  bool operator==( const cgp_params& ) const = default;
};

/*! \brief Fixed-length integer genotype.
 *
 * Layout: node j occupies genes 3j (function), 3j+1 and 3j+2 (connections);
 * the n_o output genes follow. Addresses 0..n_i-1 name program inputs and
 * n_i+j names the output of node j.
 */
class genotype
{
public:
  genotype() = default;
  genotype( const cgp_params& params, std::vector<std::uint32_t> genes );

  const cgp_params& params() const noexcept { return params_; }
  std::span<const std::uint32_t> genes() const noexcept { return genes_; }
  std::size_t gene_count() const noexcept { return genes_.size(); }

  gate_function node_function( std::size_t node ) const { return static_cast<gate_function>( genes_[genes_per_node * node] ); }
  std::uint32_t node_input( std::size_t node, unsigned k ) const { return genes_[genes_per_node * node + 1u + k]; }
  std::uint32_t output( std::size_t o ) const { return genes_[genes_per_node * params_.columns + o]; }

  void set_gene( std::size_t position, std::uint32_t value ) { genes_.at( position ) = value; }

  bool operator==( const genotype& ) const = default;

private:
  cgp_params params_;
  std::vector<std::uint32_t> genes_;
};

/// Legal values [lo, hi) of the gene at `position`.
std::pair<std::uint32_t, std::uint32_t> gene_range( const cgp_params& params, std::size_t position );

/// true iff `position` holds a node's function or connection gene.
inline bool is_node_gene( const cgp_params& params, std::size_t position ) noexcept
{
  return position < std::size_t{ genes_per_node } * params.columns;
}

struct gene_violation
{
  std::size_t position;
  std::uint32_t value;
  std::uint32_t lo;
  std::uint32_t hi; ///< exclusive

  std::string message() const;
};

/*! \brief Checks every gene against its legal range.
 *
 * For the general grid with n_r rows and levels-back l, node genes in column
 * j obey 0 <= f < n_f and
 *
 *     n_i + (j - l) n_r <= c < n_i + j n_r   if j >= l
 *     0 <= c < n_i + j n_r                   if j < l
 *
 * With n_r = 1 and l = m every column takes the second form, [0, n_i + j).
 * Output genes lie in [0, n_i + m). Returns the first offending gene.
 */
std::optional<gene_violation> validate_genotype( const genotype& g );

/// Uniform draw of every gene from its legal range, in gene order.
genotype random_genotype( const cgp_params& params, rng& gen );

/*! \brief Applies `params.mutation_count()` point mutations in place.
 *
 * Each mutation draws a position uniformly from [0, gene_count) and then a
 * value uniformly from that gene's legal range. The mutated positions are
 * appended to `positions` when it is non-null.
 */
void mutate_in_place( genotype& g, rng& gen, std::vector<std::size_t>* positions = nullptr );

/// Mutated copy of `g`.
genotype mutate( const genotype& g, rng& gen );

/// Active subgraph of a genotype.
struct phenotype
{
  std::vector<std::uint32_t> active;         ///< node columns, ascending
  std::vector<std::uint32_t> output_sources; ///< one address per output

  std::size_t gate_count() const noexcept { return active.size(); }

  bool operator==( const phenotype& ) const = default;
};

/// Backward traversal from the outputs; non-coding nodes are dropped.
phenotype decode( const genotype& g );

/// Allocation-free variant: marks active nodes in `is_active` (resized to m)
/// and writes their columns, ascending, into `active`.
void decode_into( const genotype& g, std::vector<std::uint8_t>& is_active, std::vector<std::uint32_t>& active );

class genotype_format_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Text form of a genotype.
 *
 *     cgp <n_i> <n_o> <m>\n
 *     f c1 c2 | f c1 c2 | ... || o1 o2 ...\n
 *
 * Mutation settings are not stored; `read_genotype` leaves them at their
 * defaults. For m = 0 the gene line starts with `||`.
 */
void write_genotype( std::ostream& out, const genotype& g );
std::string to_text( const genotype& g );

/// Parses the text form; validates the genes. `#` lines are comments.
genotype read_genotype( std::istream& in );
genotype parse_genotype( std::string_view text );

} // namespace fsmcgp
