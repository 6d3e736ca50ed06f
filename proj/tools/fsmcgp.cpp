#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fsmcgp/builtins.hpp>
#include <fsmcgp/cgp.hpp>
#include <fsmcgp/encoding.hpp>
#include <fsmcgp/fsm.hpp>
#include <fsmcgp/netlist.hpp>
#include <fsmcgp/sweep.hpp>
#include <fsmcgp/synth.hpp>
#include <fsmcgp/truth_table.hpp>

#ifndef FSMCGP_DATA_DIR
#define FSMCGP_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace fsmcgp;

namespace
{

enum exit_code : int
{
  exit_ok = 0,
  exit_input = 1,
  exit_budget = 2,
  exit_verify = 3
};

// errors in user-supplied files, reported with their origin
struct input_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// any other error becomes an input error with a file prefix
template<class Fn>
auto with_context( const std::string& origin, Fn&& fn ) -> decltype( fn() )
{
  try
  {
    return fn();
  }
  catch ( const input_error& )
  {
    throw;
  }
  catch ( const std::exception& e )
  {
    throw input_error( origin + ": " + e.what() );
  }
}

std::string read_file( const fs::path& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw input_error( "cannot open '" + path.string() + "'" );
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file( const fs::path& path, const std::string& content )
{
  if ( path.has_parent_path() )
  {
    fs::create_directories( path.parent_path() );
  }
  std::ofstream out( path, std::ios::binary );
  out << content;
  if ( !out )
  {
    throw std::runtime_error( "cannot write '" + path.string() + "'" );
  }
}

fsm load_machine( const std::string& source )
{
  std::vector<std::string> warnings;
  auto machine = with_context( source, [&] { return load_benchmark( source, &warnings ); } );
  for ( const auto& w : warnings )
  {
    std::cerr << source << ": warning: " << w << '\n';
  }
  return machine;
}

state_encoding make_encoding( const fsm& machine, const std::string& scheme, const std::string& map_path )
{
  if ( !map_path.empty() )
  {
    return with_context( map_path, [&] {
      std::istringstream in( read_file( map_path ) );
      return encode_states( machine, parse_encoding_map( in ) );
    } );
  }
  const auto parsed = encoding_scheme_from_string( scheme );
  if ( !parsed || *parsed == encoding_scheme::explicit_map )
  {
    throw input_error( "unknown encoding '" + scheme + "' (use natural-binary or gray, or --encoding-map)" );
  }
  return encode_states( machine, *parsed );
}

fsm_netlist load_blif( const std::string& path )
{
  return with_context( path, [&] { return parse_blif( read_file( path ) ); } );
}

// state codes recorded in the BLIF header, when they describe this machine
std::optional<state_encoding> encoding_from_blif( const fsm_netlist& fn, const fsm& machine )
{
  if ( fn.state_codes.empty() )
  {
    return std::nullopt;
  }
  try
  {
    return encode_states( machine, std::map<std::string, std::string>( fn.state_codes.begin(), fn.state_codes.end() ) );
  }
  catch ( const std::exception& )
  {
    return std::nullopt;
  }
}

struct machine_source
{
  std::string kiss2;
  std::string builtin;

  void add( CLI::App* cmd, const char* what )
  {
    cmd->add_option( "kiss2", kiss2, std::string( "KISS2 file " ) + what );
    cmd->add_option( "--builtin", builtin, "Builtin detector: 10101, 0001000, 01100110, 12-0s-then-1" );
  }

  std::string name() const
  {
    if ( kiss2.empty() == builtin.empty() )
    {
      throw input_error( "give either a KISS2 file or --builtin" );
    }
    if ( !builtin.empty() && !is_builtin( builtin ) )
    {
      throw input_error( "unknown builtin '" + builtin + "'" );
    }
    return builtin.empty() ? kiss2 : builtin;
  }
};

/* synth */

struct synth_cli
{
  machine_source source;
  synth_options options;
  std::string encoding = "natural-binary";
  std::string encoding_map;
  std::string out;
  bool strict = false;
};

int run_synth( synth_cli& cli )
{
  const auto name = cli.source.name();
  const auto machine = load_machine( name );
  const auto enc = make_encoding( machine, cli.encoding, cli.encoding_map );

  auto options = cli.options;
  options.mode = cli.strict ? mutation_mode::strict_change : mutation_mode::redraw;
  if ( options.seed == 0u )
  {
    options.seed = static_cast<std::uint64_t>( std::chrono::system_clock::now().time_since_epoch().count() ) | 1u;
    std::cerr << "seed: " << options.seed << '\n';
  }

  const auto result = synthesize( machine, enc, options );
  const auto& art = result.artifacts;
  const fs::path prefix = cli.out.empty() ? fs::path( machine.name ) : fs::path( cli.out );
  const auto with_ext = [&]( const char* ext ) { return fs::path( prefix.string() + ext ); };
  write_file( with_ext( ".genotype" ), art.genotype );
  write_file( with_ext( ".blif" ), art.blif );
  write_file( with_ext( ".dot" ), art.dot );
  write_file( with_ext( ".report" ), art.report );
  write_file( with_ext( ".csv" ), std::string( detail_csv_header ) + '\n' + art.csv_row + '\n' );
  std::cout << art.report;

  if ( !result.best.solved )
  {
    std::cerr << "budget exhausted after " << result.best.generations_used << " generations\n";
    return exit_budget;
  }
  if ( !result.verified() )
  {
    std::cerr << "verification failed\n";
    return exit_verify;
  }
  return exit_ok;
}

/* verify */

struct verify_cli
{
  std::string blif;
  machine_source source;
  std::string encoding = "natural-binary";
};

int run_verify( verify_cli& cli )
{
  const auto fn = load_blif( cli.blif );
  const auto machine = load_machine( cli.source.name() );
  auto enc = encoding_from_blif( fn, machine );
  if ( !enc )
  {
    if ( !fn.state_codes.empty() )
    {
      std::cerr << cli.blif << ": warning: state codes do not match '" << machine.name << "', using "
                << cli.encoding << '\n';
    }
    enc = make_encoding( machine, cli.encoding, {} );
  }
  const auto tt = build_truth_table( machine, *enc );
  try
  {
    const auto report = verify_netlist( fn.core, tt );
    report.write( std::cout, fn.core );
    return report.passed() ? exit_ok : exit_verify;
  }
  catch ( const netlist_error& e )
  {
    std::cout << "FAIL " << e.what() << '\n';
    return exit_verify;
  }
}

/* sim */

struct sim_cli
{
  std::string blif;
  machine_source source;
  std::string encoding = "natural-binary";
  std::string stimulus;
  std::size_t random = 0;
  std::size_t cycles = 50;
  std::uint64_t seed = 1;
  bool trace = false;
};

int run_sim( sim_cli& cli )
{
  const auto fn = load_blif( cli.blif );
  const auto machine = load_machine( cli.source.name() );
  auto enc = encoding_from_blif( fn, machine );
  if ( !enc )
  {
    enc = make_encoding( machine, cli.encoding, {} );
  }

  std::vector<std::vector<std::string>> runs;
  if ( !cli.stimulus.empty() )
  {
    std::istringstream in( read_file( cli.stimulus ) );
    std::vector<std::string> vectors;
    for ( std::string line; std::getline( in, line ); )
    {
      if ( const auto hash = line.find( '#' ); hash != std::string::npos )
      {
        line.erase( hash );
      }
      std::istringstream fields( line );
      for ( std::string tok; fields >> tok; )
      {
        vectors.push_back( tok );
      }
    }
    runs.push_back( std::move( vectors ) );
  }
  else
  {
    rng gen( cli.seed );
    for ( std::size_t r = 0; r < cli.random; ++r )
    {
      runs.push_back( random_stimulus( machine.num_inputs, cli.cycles, gen ) );
    }
  }

  std::size_t divergent = 0;
  for ( std::size_t r = 0; r < runs.size(); ++r )
  {
    const auto report =
        with_context( cli.stimulus.empty() ? cli.blif : cli.stimulus, [&] { return simulate_fsm( fn, machine, *enc, runs[r] ); } );
    if ( runs.size() > 1u )
    {
      std::cout << "run " << r << ": ";
    }
    report.write( std::cout );
    if ( cli.trace )
    {
      for ( std::size_t t = 0; t < report.output_trace.size(); ++t )
      {
        std::cout << t << ' ' << runs[r][t] << ' ' << report.output_trace[t] << '\n';
      }
    }
    divergent += report.passed() ? 0u : 1u;
  }
  if ( runs.size() > 1u )
  {
    std::cout << "# " << runs.size() << " runs, " << divergent << " divergent\n";
  }
  return divergent == 0u ? exit_ok : exit_verify;
}

/* encode */

struct encode_cli
{
  machine_source source;
  std::string encoding = "natural-binary";
  std::string encoding_map;
  std::string pla;
};

int run_encode( encode_cli& cli )
{
  const auto machine = load_machine( cli.source.name() );
  const auto enc = make_encoding( machine, cli.encoding, cli.encoding_map );
  const auto pla = export_pla( build_truth_table( machine, enc ) );
  if ( cli.pla.empty() || cli.pla == "-" )
  {
    std::cout << pla;
  }
  else
  {
    write_file( cli.pla, pla );
  }
  for ( std::size_t s = 0; s < machine.states.size(); ++s )
  {
    std::cerr << "# state " << machine.states[s] << ' ' << enc.code_string( s ) << '\n';
  }
  return exit_ok;
}

/* export */

struct export_cli
{
  std::string genotype;
  std::string kiss2;
  std::string builtin;
  std::string encoding = "natural-binary";
  std::string blif;
  std::string dot;
};

int run_export( export_cli& cli )
{
  const auto g = with_context( cli.genotype, [&] { return parse_genotype( read_file( cli.genotype ) ); } );
  const auto pheno = decode( g );
  if ( cli.blif.empty() && cli.dot.empty() )
  {
    throw input_error( "nothing to export: give --blif and/or --dot" );
  }

  std::string blif, dot;
  if ( !cli.kiss2.empty() || !cli.builtin.empty() )
  {
    machine_source source{ cli.kiss2, cli.builtin };
    const auto machine = load_machine( source.name() );
    const auto enc = make_encoding( machine, cli.encoding, {} );
    const auto tt = build_truth_table( machine, enc );
    if ( g.params().num_inputs != tt.num_vars || g.params().num_outputs != tt.num_outs )
    {
      throw input_error( cli.genotype + ": genotype shape does not match '" + machine.name + "'" );
    }
    const auto fn = assemble_fsm( to_netlist( pheno, g, signal_naming::for_table( tt ) ), enc, machine );
    blif = export_blif( fn );
    dot = export_dot( fn );
  }
  else
  {
    const auto& p = g.params();
    const auto n = to_netlist( pheno, g, signal_naming::generic( p.num_inputs, p.num_outputs ) );
    const auto model = fs::path( cli.genotype ).stem().string();
    blif = export_blif( n, model );
    dot = export_dot( n, model );
  }
  if ( !cli.blif.empty() )
  {
    write_file( cli.blif, blif );
  }
  if ( !cli.dot.empty() )
  {
    write_file( cli.dot, dot );
  }
  std::cout << "gates: " << pheno.gate_count() << '\n';
  return exit_ok;
}

/* sweep */

struct sweep_cli
{
  std::string grid;
  std::string detail = "sweep_detail.csv";
  std::string aggregate = "sweep_aggregate.csv";
  std::string bench_dir = FSMCGP_DATA_DIR "/mcnc";
  sweep_options options;
};

std::string resolve_benchmark( const std::string& name, const fs::path& grid_dir, const fs::path& bench_dir )
{
  if ( is_builtin( name ) )
  {
    return name;
  }
  for ( const auto& candidate : { fs::path( name ), grid_dir / name, bench_dir / name, bench_dir / ( name + ".kiss2" ) } )
  {
    if ( fs::is_regular_file( candidate ) )
    {
      return candidate.string();
    }
  }
  throw input_error( "unknown benchmark '" + name + "'" );
}

int run_sweep_cmd( sweep_cli& cli )
{
  const auto grid = with_context( cli.grid, [&] {
    std::istringstream in( read_file( cli.grid ) );
    return parse_grid( in );
  } );

  std::map<std::string, truth_table> tables;
  for ( const auto& cell : grid )
  {
    if ( tables.contains( cell.benchmark ) )
    {
      continue;
    }
    const auto source = resolve_benchmark( cell.benchmark, fs::path( cli.grid ).parent_path(), cli.bench_dir );
    const auto machine = load_machine( source );
    tables.emplace( cell.benchmark, build_truth_table( machine, encode_states( machine ) ) );
  }

  const auto result = with_context( cli.grid, [&] { return run_sweep( tables, grid, cli.options ); } );
  std::ostringstream detail, aggregate;
  write_detail_csv( detail, result );
  write_aggregate_csv( aggregate, result );
  write_file( cli.detail, detail.str() );
  write_file( cli.aggregate, aggregate.str() );
  std::cout << aggregate.str();
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Evolves NAND/NOR gate netlists for finite state machines with Cartesian genetic programming" };
  app.require_subcommand( 1 );

  synth_cli synth;
  auto* synth_cmd = app.add_subcommand( "synth", "Evolve, verify and write a netlist for one machine" );
  synth.source.add( synth_cmd, "to synthesize" );
  synth_cmd->add_option( "--m", synth.options.m, "Number of CGP nodes (columns; also levels-back)" )
      ->required()
      ->check( CLI::Range( 1u, 100000u ) );
  synth_cmd->add_option( "--lambda", synth.options.lambda, "Offspring per generation" )
      ->capture_default_str()
      ->check( CLI::Range( 1u, 1024u ) );
  synth_cmd->add_option( "--mu", synth.options.mu_r, "Mutation rate in percent of genes (3-10 is typical)" )
      ->capture_default_str()
      ->check( CLI::Range( 0.1, 100.0 ) );
  synth_cmd->add_option( "--seed", synth.options.seed, "Random seed; 0 derives one from the clock and echoes it" )
      ->capture_default_str();
  synth_cmd->add_option( "--max-generations", synth.options.max_generations, "Generation budget per run" )
      ->capture_default_str()
      ->check( CLI::PositiveNumber );
  synth_cmd->add_option( "--snapshot-stride", synth.options.snapshot_stride, "Trace stride in generations (0: improvements only)" )
      ->capture_default_str();
  auto* enc_opt = synth_cmd->add_option( "--encoding", synth.encoding, "State encoding: natural-binary or gray" )
                      ->capture_default_str();
  synth_cmd->add_option( "--encoding-map", synth.encoding_map, "File of `state code` lines" )->excludes( enc_opt );
  synth_cmd->add_option( "--out", synth.out, "Output prefix (default: the machine name)" );
  synth_cmd->add_option( "--repeat", synth.options.repeat, "Runs with seeds seed .. seed+N-1; the best is kept" )
      ->capture_default_str()
      ->check( CLI::Range( 1u, 100000u ) );
  synth_cmd->add_option( "--jobs", synth.options.jobs, "Concurrent runs for --repeat" )
      ->capture_default_str()
      ->check( CLI::Range( 1u, 1024u ) );
  synth_cmd->add_flag( "--strict-mutation", synth.strict, "Redraw mutated genes until they change" );

  verify_cli verify;
  auto* verify_cmd = app.add_subcommand( "verify", "Check a BLIF netlist against a machine on every truth-table row" );
  verify_cmd->add_option( "blif", verify.blif, "BLIF netlist" )->required();
  verify.source.add( verify_cmd, "to check against" );
  verify_cmd->add_option( "--encoding", verify.encoding, "Encoding used when the BLIF carries no state codes" )
      ->capture_default_str();

  sim_cli sim;
  auto* sim_cmd = app.add_subcommand( "sim", "Co-simulate a BLIF netlist against a machine" );
  sim_cmd->add_option( "blif", sim.blif, "BLIF netlist" )->required();
  sim.source.add( sim_cmd, "to simulate against" );
  sim_cmd->add_option( "--encoding", sim.encoding, "Encoding used when the BLIF carries no state codes" )
      ->capture_default_str();
  auto* stim_opt = sim_cmd->add_option( "--stimulus", sim.stimulus, "File with one input vector per line" );
  auto* random_opt = sim_cmd->add_option( "--random", sim.random, "Number of random stimuli" )->excludes( stim_opt );
  stim_opt->excludes( random_opt );
  sim_cmd->add_option( "--cycles", sim.cycles, "Cycles per random stimulus" )->capture_default_str();
  sim_cmd->add_option( "--seed", sim.seed, "Seed for random stimuli" )->capture_default_str();
  sim_cmd->add_flag( "--trace", sim.trace, "Print cycle, input and gate-level output" );

  encode_cli encode;
  auto* encode_cmd = app.add_subcommand( "encode", "Write the encoded truth table as an espresso PLA" );
  encode.source.add( encode_cmd, "to encode" );
  auto* encode_enc = encode_cmd->add_option( "--encoding", encode.encoding, "State encoding: natural-binary or gray" )
                         ->capture_default_str();
  encode_cmd->add_option( "--encoding-map", encode.encoding_map, "File of `state code` lines" )->excludes( encode_enc );
  encode_cmd->add_option( "--pla", encode.pla, "PLA output file (default: stdout)" );

  export_cli exp;
  auto* export_cmd = app.add_subcommand( "export", "Render a genotype as BLIF and/or DOT" );
  export_cmd->add_option( "genotype", exp.genotype, "Genotype text file" )->required();
  export_cmd->add_option( "--kiss", exp.kiss2, "Machine the genotype was evolved for (adds latches and names)" );
  export_cmd->add_option( "--builtin", exp.builtin, "Builtin machine the genotype was evolved for" );
  export_cmd->add_option( "--encoding", exp.encoding, "State encoding used for evolution" )->capture_default_str();
  export_cmd->add_option( "--blif", exp.blif, "BLIF output file" );
  export_cmd->add_option( "--dot", exp.dot, "DOT output file" );

  sweep_cli sweep;
  auto* sweep_cmd = app.add_subcommand( "sweep", "Run a benchmark x parameter grid and write CSV summaries" );
  sweep_cmd->add_option( "grid", sweep.grid, "Grid CSV: benchmark,lambda,m,mu_r,seeds" )->required();
  sweep_cmd->add_option( "--detail", sweep.detail, "Per-run CSV" )->capture_default_str();
  sweep_cmd->add_option( "--aggregate", sweep.aggregate, "Per-cell CSV" )->capture_default_str();
  sweep_cmd->add_option( "--bench-dir", sweep.bench_dir, "Directory searched for <name>.kiss2" )->capture_default_str();
  sweep_cmd->add_option( "--max-generations", sweep.options.max_generations, "Generation budget per run" )
      ->capture_default_str()
      ->check( CLI::PositiveNumber );
  sweep_cmd->add_option( "--first-seed", sweep.options.first_seed, "Seed of the first run in every cell" )
      ->capture_default_str();
  sweep_cmd->add_option( "--jobs", sweep.options.jobs, "Concurrent runs" )
      ->capture_default_str()
      ->check( CLI::Range( 1u, 1024u ) );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const auto code = app.exit( e );
    return code == 0 ? exit_ok : exit_input;
  }

  try
  {
    if ( synth_cmd->parsed() )
    {
      return run_synth( synth );
    }
    if ( verify_cmd->parsed() )
    {
      return run_verify( verify );
    }
    if ( sim_cmd->parsed() )
    {
      return run_sim( sim );
    }
    if ( encode_cmd->parsed() )
    {
      return run_encode( encode );
    }
    if ( export_cmd->parsed() )
    {
      return run_export( exp );
    }
    return run_sweep_cmd( sweep );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
}
