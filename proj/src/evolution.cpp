#include <fsmcgp/evolution.hpp>

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace fsmcgp
{

std::optional<std::size_t> select_parent( std::uint64_t parent_mismatches,
                                          std::span<const std::uint64_t> offspring_mismatches, rng& gen )
{
  if ( offspring_mismatches.empty() )
  {
    throw std::invalid_argument( "select_parent: no offspring" );
  }
  const auto best = *std::min_element( offspring_mismatches.begin(), offspring_mismatches.end() );
  if ( parent_mismatches < best )
  {
    return std::nullopt;
  }
  const auto tied = static_cast<std::size_t>(
      std::count( offspring_mismatches.begin(), offspring_mismatches.end(), best ) );
  auto pick = tied == 1u ? 0u : static_cast<std::size_t>( gen.below( tied ) );
  for ( std::size_t i = 0; i < offspring_mismatches.size(); ++i )
  {
    if ( offspring_mismatches[i] == best && pick-- == 0u )
    {
      return i;
    }
  }
  return std::nullopt; // unreachable
}

namespace
{

struct candidate
{
  genotype genes;
  fitness fit;
  std::vector<std::uint8_t> is_active;
  std::vector<std::uint32_t> active;
};

} // namespace

evolution_report evolve( const packed_table& table, const cgp_params& params, const evolve_config& cfg )
{
  params.validate();
  if ( params.num_inputs != table.num_vars() || params.num_outputs != table.num_outs() )
  {
    throw std::invalid_argument( "evolve: parameters do not match the truth table shape" );
  }
  if ( cfg.lambda == 0u || cfg.max_generations == 0u )
  {
    throw std::invalid_argument( "evolve: lambda and max_generations must be at least 1" );
  }

  const auto start = std::chrono::steady_clock::now();
  rng gen( cfg.seed );
  packed_evaluator eval( table );

  evolution_report report;
  report.seed = cfg.seed;
  report.params = params;
  report.config = cfg;

  candidate parent;
  parent.genes = random_genotype( params, gen );
  decode_into( parent.genes, parent.is_active, parent.active );
  parent.fit = eval( parent.genes, parent.active );
  report.best_trace.push_back( { 0u, parent.fit.mismatches, parent.fit.rmse } );

  std::vector<candidate> offspring( cfg.lambda );
  std::vector<std::uint64_t> errors( cfg.lambda );
  std::vector<std::size_t> touched;

  std::uint64_t generation = 0;
  while ( parent.fit.mismatches != 0u && generation < cfg.max_generations )
  {
    ++generation;
    for ( std::size_t i = 0; i < cfg.lambda; ++i )
    {
      auto& child = offspring[i];
      child.genes = parent.genes;
      touched.clear();
      mutate_in_place( child.genes, gen, &touched );

      // mutations confined to non-coding genes leave the phenotype unchanged
      const bool coding = std::any_of( touched.begin(), touched.end(), [&]( std::size_t pos ) {
        return !is_node_gene( params, pos ) || parent.is_active[pos / genes_per_node];
      } );
      if ( coding )
      {
        decode_into( child.genes, child.is_active, child.active );
        child.fit = eval( child.genes, child.active );
      }
      else
      {
        child.is_active = parent.is_active;
        child.active = parent.active;
        child.fit = parent.fit;
      }
      errors[i] = child.fit.mismatches;
    }

    if ( const auto winner = select_parent( parent.fit.mismatches, errors, gen ) )
    {
      const bool improved = offspring[*winner].fit.mismatches < parent.fit.mismatches;
      std::swap( parent, offspring[*winner] );
      if ( improved )
      {
        report.best_trace.push_back( { generation, parent.fit.mismatches, parent.fit.rmse } );
        continue;
      }
    }
    if ( cfg.snapshot_stride != 0u && generation % cfg.snapshot_stride == 0u )
    {
      report.best_trace.push_back( { generation, parent.fit.mismatches, parent.fit.rmse } );
    }
  }

  if ( report.best_trace.back().generation != generation )
  {
    report.best_trace.push_back( { generation, parent.fit.mismatches, parent.fit.rmse } );
  }

  report.solved = parent.fit.mismatches == 0u;
  report.generations_used = generation;
  report.evaluations = generation * cfg.lambda;
  report.final_fitness = parent.fit;
  report.active_nodes = parent.active.size();
  report.final_genotype = std::move( parent.genes );
  report.wall_time_s = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  return report;
}

evolution_report evolve( const truth_table& tt, const cgp_params& params, const evolve_config& cfg )
{
  const auto table = pack_table( tt );
  return evolve( table, params, cfg );
}

} // namespace fsmcgp
