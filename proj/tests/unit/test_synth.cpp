#include <doctest.h>

#include <fsmcgp/builtins.hpp>
#include <fsmcgp/synth.hpp>

using namespace fsmcgp;

namespace
{

std::string without_wall_time( const std::string& report )
{
  const auto pos = report.find( "wall_time_s:" );
  return report.substr( 0, pos );
}

} // namespace

TEST_SUITE( "synth" )
{
  TEST_CASE( "benchmark loading" )
  {
    CHECK( load_benchmark( "10101" ).states.size() == 6u );
    CHECK( load_benchmark( FSMCGP_DATA_DIR "/mcnc/dk27.kiss2" ).name == "dk27" );
    CHECK_THROWS_AS( load_benchmark( "/nonexistent.kiss2" ), parse_error );
  }

  TEST_CASE( "solved detector is verified by every oracle" )
  {
    const auto m = load_builtin( "0001000" );
    synth_options o;
    o.m = 25;
    o.seed = 3;
    const auto r = synthesize( m, encode_states( m ), o );
    REQUIRE( r.best.solved );
    CHECK( r.oracles_agree() );
    CHECK( r.verified() );
    CHECK( r.cosim_runs == 100u );
    CHECK( r.cosim_divergences == 0u );
    CHECK( r.netlist.gate_count() == r.best.active_nodes );
    CHECK( r.artifacts.report.find( "solved: yes\n" ) != std::string::npos );
    CHECK( r.artifacts.report.find( "seed: 3\n" ) != std::string::npos );
    CHECK( r.artifacts.report.find( "gates: " + std::to_string( r.best.active_nodes ) + "\n" ) != std::string::npos );
    CHECK( r.artifacts.csv_row.rfind( "0001000,4,25,10,3,1,", 0 ) == 0u );
    CHECK( parse_genotype( r.artifacts.genotype ) == r.best.final_genotype );
    CHECK( parse_blif( r.artifacts.blif ).gate_count() == r.best.active_nodes );
  }

  TEST_CASE( "artifacts are deterministic apart from wall time" )
  {
    const auto m = load_builtin( "10101" );
    synth_options o;
    o.m = 20;
    o.seed = 11;
    o.repeat = 3;
    const auto a = synthesize( m, encode_states( m ), o );
    o.jobs = 2;
    const auto b = synthesize( m, encode_states( m ), o );
    CHECK( a.artifacts.genotype == b.artifacts.genotype );
    CHECK( a.artifacts.blif == b.artifacts.blif );
    CHECK( a.artifacts.dot == b.artifacts.dot );
    CHECK( without_wall_time( a.artifacts.report ) == without_wall_time( b.artifacts.report ) );
    CHECK( a.artifacts.report.substr( a.artifacts.report.rfind( '\n', a.artifacts.report.size() - 2 ) + 1 ).rfind( "wall_time_s: ", 0 ) == 0u );
  }

  TEST_CASE( "repeat keeps the smallest solved circuit" )
  {
    const auto m = load_builtin( "10101" );
    synth_options o;
    o.m = 25;
    o.seed = 1;
    o.repeat = 4;
    const auto r = synthesize( m, encode_states( m ), o );
    REQUIRE( r.runs.size() == 4u );
    std::size_t best = SIZE_MAX;
    std::uint64_t best_seed = 0;
    for ( const auto& run : r.runs )
    {
      CHECK( run.seed >= 1u );
      CHECK( run.seed <= 4u );
      if ( run.solved && run.active_nodes < best )
      {
        best = run.active_nodes;
        best_seed = run.seed;
      }
    }
    CHECK( r.best.active_nodes == best );
    CHECK( r.best.seed == best_seed );
  }

  TEST_CASE( "exhausted budget" )
  {
    const auto m = load_builtin( "12-0s-then-1" );
    synth_options o;
    o.m = 5;
    o.seed = 1;
    o.max_generations = 50;
    const auto r = synthesize( m, encode_states( m ), o );
    CHECK_FALSE( r.best.solved );
    CHECK_FALSE( r.verified() );
    CHECK( r.oracles_agree() );
    CHECK( r.cosim_runs == 0u );
    CHECK( r.artifacts.report.find( "solved: no\n" ) != std::string::npos );
  }
}
