#include <fsmcgp/synth.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include <fsmcgp/builtins.hpp>
#include <fsmcgp/sweep.hpp>

namespace fsmcgp
{

fsm load_benchmark( std::string_view name_or_path, std::vector<std::string>* warnings )
{
  if ( is_builtin( name_or_path ) )
  {
    return load_builtin( name_or_path );
  }
  return read_kiss2( std::filesystem::path( name_or_path ), warnings );
}

namespace
{

std::string fixed( double value, int digits )
{
  std::ostringstream out;
  out << std::fixed << std::setprecision( digits ) << value;
  return out.str();
}

// stimulus stream for co-simulation, decoupled from the evolution stream
constexpr std::uint64_t cosim_salt = 0x636f73696d756c61ull;

} // namespace

synth_result synthesize( const fsm& machine, const state_encoding& enc, const synth_options& options )
{
  if ( options.repeat == 0u )
  {
    throw std::invalid_argument( "synthesize: repeat must be at least 1" );
  }
  const auto start = std::chrono::steady_clock::now();

  synth_result result;
  result.table = build_truth_table( machine, enc );
  const auto table = pack_table( result.table );

  cgp_params params;
  params.num_inputs = result.table.num_vars;
  params.num_outputs = result.table.num_outs;
  params.columns = options.m;
  params.mutation_rate = options.mu_r;
  params.mode = options.mode;
  params.validate();

  result.runs.resize( options.repeat );
  std::atomic<unsigned> next{ 0 };
  const auto worker = [&] {
    for ( auto i = next.fetch_add( 1 ); i < options.repeat; i = next.fetch_add( 1 ) )
    {
      evolve_config cfg;
      cfg.lambda = options.lambda;
      cfg.max_generations = options.max_generations;
      cfg.seed = options.seed + i;
      cfg.snapshot_stride = options.snapshot_stride;
      result.runs[i] = evolve( table, params, cfg );
    }
  };
  {
    const auto jobs = std::clamp<unsigned>( options.jobs, 1u, options.repeat );
    std::vector<std::jthread> pool;
    for ( unsigned t = 1; t < jobs; ++t )
    {
      pool.emplace_back( worker );
    }
    worker();
  }

  const auto better = []( const evolution_report& a, const evolution_report& b ) {
    if ( a.solved != b.solved )
    {
      return a.solved;
    }
    if ( a.solved && a.active_nodes != b.active_nodes )
    {
      return a.active_nodes < b.active_nodes;
    }
    return false;
  };
  result.best = *std::min_element( result.runs.begin(), result.runs.end(), better );
  const auto& best = result.best;
  const auto& g = best.final_genotype;

  result.packed = evaluate( g, table );
  result.scalar = evaluate_scalar( g, result.table );
  result.netlist = to_netlist( decode( g ), g, signal_naming::for_table( result.table ) );
  result.verification = verify_netlist( result.netlist, result.table );
  result.machine_netlist = assemble_fsm( result.netlist, enc, machine );

  if ( best.solved )
  {
    rng gen( best.seed ^ cosim_salt );
    for ( std::size_t s = 0; s < options.cosim_stimuli; ++s )
    {
      const auto stimulus = random_stimulus( machine.num_inputs, options.cosim_cycles, gen );
      const auto sim = simulate_fsm( result.machine_netlist, machine, enc, stimulus );
      ++result.cosim_runs;
      result.cosim_divergences += sim.passed() ? 0u : 1u;
    }
  }

  auto& art = result.artifacts;
  art.genotype = to_text( g );
  art.blif = export_blif( result.machine_netlist );
  art.dot = export_dot( result.machine_netlist );

  const auto wall = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();

  std::ostringstream rep;
  rep << "benchmark: " << machine.name << '\n'
      << "states: " << machine.states.size() << '\n'
      << "inputs: " << machine.num_inputs << '\n'
      << "outputs: " << machine.num_outputs << '\n'
      << "state_bits: " << enc.width << '\n'
      << "encoding: " << to_string( enc.scheme ) << '\n'
      << "care_bits: " << table.total_care() << '\n'
      << "lambda: " << options.lambda << '\n'
      << "m: " << options.m << '\n'
      << "mu_r: " << format_rate( options.mu_r ) << '\n'
      << "mutations_per_offspring: " << params.mutation_count() << '\n'
      << "mutation_mode: " << ( options.mode == mutation_mode::redraw ? "redraw" : "strict-change" ) << '\n'
      << "max_generations: " << options.max_generations << '\n'
      << "seed: " << best.seed << '\n';
  if ( options.repeat > 1u )
  {
    rep << "repeat: " << options.repeat << '\n';
    for ( const auto& run : result.runs )
    {
      rep << "  run seed " << run.seed << ": " << ( run.solved ? "solved" : "unsolved" ) << ", generations "
          << run.generations_used << ", gates " << run.active_nodes << '\n';
    }
  }
  rep << "solved: " << ( best.solved ? "yes" : "no" ) << '\n'
      << "generations: " << best.generations_used << '\n'
      << "evaluations: " << best.evaluations << '\n'
      << "mismatches: " << best.final_fitness.mismatches << '\n'
      << "rmse: " << fixed( best.final_fitness.rmse, 6 ) << '\n'
      << "gates: " << result.netlist.gate_count() << '\n'
      << "transistors_estimate: " << result.netlist.gate_count() * transistors_per_gate << '\n'
      << "latches: " << result.machine_netlist.latches.size() << '\n'
      << "check_packed_mismatches: " << result.packed.mismatches << '\n'
      << "check_scalar_mismatches: " << result.scalar.mismatches << '\n'
      << "check_netlist: " << ( result.verification.passed() ? "PASS" : "FAIL" ) << " ("
      << result.verification.mismatches.size() << " mismatches)\n"
      << "check_cosim: " << result.cosim_runs << " runs x " << options.cosim_cycles << " cycles, "
      << result.cosim_divergences << " divergent\n"
      << "trace:\n";
  for ( const auto& p : best.best_trace )
  {
    rep << "  " << p.generation << ' ' << p.mismatches << ' ' << fixed( p.rmse, 6 ) << '\n';
  }
  rep << "wall_time_s: " << fixed( wall, 3 ) << '\n';
  art.report = rep.str();

  sweep_run row;
  row.cell = { machine.name, options.lambda, options.m, options.mu_r, options.repeat };
  row.seed = best.seed;
  row.solved = best.solved;
  row.generations = best.generations_used;
  row.evaluations = best.evaluations;
  row.active_nodes = best.active_nodes;
  row.wall_time_s = best.wall_time_s;
  art.csv_row = detail_csv_row( row );
  return result;
}

} // namespace fsmcgp
