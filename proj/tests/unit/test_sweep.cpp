#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <fsmcgp/builtins.hpp>
#include <fsmcgp/evolution.hpp>
#include <fsmcgp/sweep.hpp>

using namespace fsmcgp;

namespace
{

std::map<std::string, truth_table> tables()
{
  std::map<std::string, truth_table> t;
  const auto dk27 = read_kiss2( FSMCGP_DATA_DIR "/mcnc/dk27.kiss2" );
  t.emplace( "dk27", build_truth_table( dk27, encode_states( dk27 ) ) );
  const auto det = load_builtin( "10101" );
  t.emplace( "10101", build_truth_table( det, encode_states( det ) ) );
  return t;
}

std::vector<std::string> lines_of( const std::string& text )
{
  std::vector<std::string> lines;
  std::istringstream in( text );
  for ( std::string line; std::getline( in, line ); )
  {
    lines.push_back( line );
  }
  return lines;
}

std::string strip_wall_time( const std::string& row )
{
  return row.substr( 0, row.rfind( ',' ) );
}

} // namespace

TEST_SUITE( "sweep" )
{
  TEST_CASE( "grid parsing" )
  {
    std::istringstream in( "benchmark,lambda,m,mu_r,seeds\n# comment\ndk27,4,25,10,10\n\ndk27, 8, 25, 10, 10\nbeecount,4,55,3.5,2\n" );
    const auto grid = parse_grid( in );
    REQUIRE( grid.size() == 3u );
    CHECK( grid[1].lambda == 8u );
    CHECK( grid[2].mu_r == 3.5 );
    CHECK( grid[2].seeds == 2u );

    std::istringstream no_header( "dk27,4,25,10,10\n" );
    CHECK_THROWS_AS( parse_grid( no_header ), sweep_error );
    std::istringstream short_row( "benchmark,lambda,m,mu_r,seeds\ndk27,4,25,10\n" );
    CHECK_THROWS_AS( parse_grid( short_row ), sweep_error );
    std::istringstream bad_number( "benchmark,lambda,m,mu_r,seeds\ndk27,four,25,10,1\n" );
    CHECK_THROWS_AS( parse_grid( bad_number ), sweep_error );
    std::istringstream bad_rate( "benchmark,lambda,m,mu_r,seeds\ndk27,4,25,0,1\n" );
    CHECK_THROWS_AS( parse_grid( bad_rate ), sweep_error );
  }

  TEST_CASE( "grid errors surface before any run" )
  {
    const auto t = tables();
    const std::vector<sweep_cell> unknown{ { "dk27", 4, 25, 10, 1 }, { "nope", 4, 25, 10, 1 } };
    CHECK_THROWS_AS( run_sweep( t, unknown, {} ), sweep_error );
    const std::vector<sweep_cell> no_seeds{ { "dk27", 4, 25, 10, 0 } };
    CHECK_THROWS_AS( run_sweep( t, no_seeds, {} ), sweep_error );
    CHECK_THROWS_AS( run_sweep( t, std::vector<sweep_cell>{}, {} ), sweep_error );
  }

  TEST_CASE( "row counts, seed numbering and aggregates" )
  {
    const auto t = tables();
    const std::vector<sweep_cell> grid{ { "dk27", 4, 25, 10, 10 }, { "dk27", 8, 25, 10, 10 } };
    sweep_options options;
    options.max_generations = 20000;
    const auto result = run_sweep( t, grid, options );
    REQUIRE( result.runs.size() == 20u );
    REQUIRE( result.aggregates.size() == 2u );
    for ( std::size_t i = 0; i < 20; ++i )
    {
      CHECK( result.runs[i].seed == 1u + i % 10u );
      CHECK( result.runs[i].cell.lambda == ( i < 10 ? 4u : 8u ) );
      CHECK( result.runs[i].evaluations == result.runs[i].generations * result.runs[i].cell.lambda );
      CHECK( result.runs[i].generations <= options.max_generations );
    }

    // aggregates recomputed from the detail rows
    for ( std::size_t c = 0; c < 2; ++c )
    {
      std::vector<double> gens, nodes;
      for ( std::size_t i = 10 * c; i < 10 * c + 10; ++i )
      {
        if ( result.runs[i].solved )
        {
          gens.push_back( static_cast<double>( result.runs[i].generations ) );
          nodes.push_back( static_cast<double>( result.runs[i].active_nodes ) );
        }
      }
      const auto& agg = result.aggregates[c];
      CHECK( agg.runs == 10u );
      CHECK( agg.solved == gens.size() );
      CHECK( agg.solve_rate() == doctest::Approx( gens.size() / 10.0 ) );
      if ( gens.empty() )
      {
        CHECK_FALSE( agg.median_generations.has_value() );
        continue;
      }
      std::sort( gens.begin(), gens.end() );
      std::sort( nodes.begin(), nodes.end() );
      const auto mid = []( const std::vector<double>& v ) {
        return v.size() % 2 ? v[v.size() / 2] : 0.5 * ( v[v.size() / 2 - 1] + v[v.size() / 2] );
      };
      CHECK( *agg.median_generations == mid( gens ) );
      CHECK( *agg.median_evaluations == mid( gens ) * agg.cell.lambda );
      CHECK( *agg.min_nodes == nodes.front() );
      CHECK( *agg.median_nodes == mid( nodes ) );
    }

    std::ostringstream detail, aggregate;
    write_detail_csv( detail, result );
    write_aggregate_csv( aggregate, result );
    const auto d = lines_of( detail.str() );
    const auto a = lines_of( aggregate.str() );
    REQUIRE( d.size() == 21u );
    REQUIRE( a.size() == 3u );
    CHECK( d[0] == detail_csv_header );
    CHECK( a[0] == aggregate_csv_header );
    for ( const auto& line : d )
    {
      CHECK( std::count( line.begin(), line.end(), ',' ) == 9 );
    }
    for ( const auto& line : a )
    {
      CHECK( std::count( line.begin(), line.end(), ',' ) == 10 );
    }
    CHECK( d[1].rfind( "dk27,4,25,10,1,", 0 ) == 0u );
  }

  TEST_CASE( "runs match standalone evolution and do not depend on jobs" )
  {
    const auto t = tables();
    const std::vector<sweep_cell> grid{ { "10101", 4, 25, 10, 3 }, { "dk27", 8, 20, 5, 2 } };
    sweep_options one;
    one.max_generations = 5000;
    one.first_seed = 40;
    auto three = one;
    three.jobs = 3;
    const auto a = run_sweep( t, grid, one );
    const auto b = run_sweep( t, grid, three );
    REQUIRE( a.runs.size() == 5u );
    for ( std::size_t i = 0; i < a.runs.size(); ++i )
    {
      CHECK( strip_wall_time( detail_csv_row( a.runs[i] ) ) == strip_wall_time( detail_csv_row( b.runs[i] ) ) );
    }

    const auto& run = a.runs[3];
    cgp_params p;
    p.num_inputs = t.at( "dk27" ).num_vars;
    p.num_outputs = t.at( "dk27" ).num_outs;
    p.columns = 20;
    p.mutation_rate = 5;
    evolve_config cfg;
    cfg.lambda = 8;
    cfg.seed = 40;
    cfg.max_generations = 5000;
    const auto rep = evolve( t.at( "dk27" ), p, cfg );
    CHECK( run.seed == 40u );
    CHECK( run.generations == rep.generations_used );
    CHECK( run.active_nodes == rep.active_nodes );
    CHECK( run.solved == rep.solved );
  }

  TEST_CASE( "rate formatting" )
  {
    CHECK( format_rate( 10.0 ) == "10" );
    CHECK( format_rate( 3.0 ) == "3" );
    CHECK( format_rate( 3.5 ) == "3.5" );
    CHECK( format_rate( 0.1 ) == "0.1" );
  }
}
