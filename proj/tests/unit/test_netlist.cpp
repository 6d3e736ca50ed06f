#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <fsmcgp/builtins.hpp>
#include <fsmcgp/evolution.hpp>
#include <fsmcgp/netlist.hpp>

#include "oracles.hpp"

using namespace fsmcgp;

namespace
{

struct solved_machine
{
  fsm machine;
  state_encoding enc;
  truth_table table;
  genotype g;
  gate_netlist core;
  fsm_netlist fn;
};

solved_machine solve( const fsm& machine, std::uint64_t seed, unsigned m = 25 )
{
  solved_machine s{ machine, encode_states( machine ), {}, {}, {}, {} };
  s.table = build_truth_table( machine, s.enc );
  cgp_params p;
  p.num_inputs = s.table.num_vars;
  p.num_outputs = s.table.num_outs;
  p.columns = m;
  evolve_config cfg;
  cfg.lambda = 8;
  cfg.seed = seed;
  cfg.max_generations = 5'000'000;
  const auto rep = evolve( s.table, p, cfg );
  REQUIRE( rep.solved );
  s.g = rep.final_genotype;
  s.core = to_netlist( decode( s.g ), s.g, signal_naming::for_table( s.table ) );
  s.fn = assemble_fsm( s.core, s.enc, machine );
  return s;
}

const solved_machine& detector()
{
  static const auto s = solve( load_builtin( "10101" ), 1 );
  return s;
}

std::size_t count( const std::string& text, const std::string& needle )
{
  std::size_t n = 0;
  for ( auto pos = text.find( needle ); pos != std::string::npos; pos = text.find( needle, pos + 1 ) )
  {
    ++n;
  }
  return n;
}

// gate-level simulation straight from the genotype, independent of the netlist code
std::vector<std::string> simulate_genotype( const solved_machine& s, const std::vector<std::string>& stimulus )
{
  const auto& tt = s.table;
  const auto& p = s.g.params();
  std::uint64_t state = s.enc.codes[*s.machine.reset_state];
  std::vector<std::string> trace;
  for ( const auto& in : stimulus )
  {
    std::uint64_t row = state;
    for ( unsigned i = 0; i < tt.num_primary_inputs; ++i )
    {
      row |= static_cast<std::uint64_t>( in[i] == '1' ) << tt.input_var( i );
    }
    std::string outs;
    for ( unsigned j = 0; j < tt.num_primary_outputs; ++j )
    {
      outs += oracle::eval_address( s.g, s.g.output( tt.output_col( j ) ), row ) ? '1' : '0';
    }
    trace.push_back( outs );
    std::uint64_t next = 0;
    for ( unsigned k = 0; k < tt.num_state_bits; ++k )
    {
      next |= static_cast<std::uint64_t>( oracle::eval_address( s.g, s.g.output( tt.next_state_col( k ) ), row ) ) << k;
    }
    state = next;
    (void)p;
  }
  return trace;
}

} // namespace

TEST_SUITE( "netlist" )
{
  TEST_CASE( "reduction percentages of reference gate-count pairs" )
  {
    struct row
    {
      std::size_t espresso, cgp;
      double percent;
    };
    for ( const auto& r : { row{ 23, 18, 21.73 }, row{ 25, 19, 24.0 }, row{ 31, 22, 29.03 }, row{ 38, 26, 31.57 },
                            row{ 62, 43, 30.64 }, row{ 124, 79, 36.29 }, row{ 23, 19, 17.39 }, row{ 27, 18, 33.33 },
                            row{ 30, 20, 33.33 }, row{ 42, 20, 52.38 } } )
    {
      CAPTURE( r.espresso );
      CAPTURE( r.cgp );
      CHECK( std::abs( reduction_percent( r.espresso, r.cgp ) - r.percent ) <= 0.01 );
    }
    CHECK( format_reduction( 23, 18 ) == "21.73" );
    CHECK( format_reduction( 25, 19 ) == "24.00" );
    CHECK( format_reduction( 38, 26 ) == "31.57" );
    CHECK( format_reduction( 100, 101 ) == "-1.00" );
    CHECK( format_reduction( 100, 100 ) == "0.00" );
    CHECK_THROWS_AS( reduction_percent( 0, 1 ), std::invalid_argument );
  }

  TEST_CASE( "netlist from a phenotype" )
  {
    cgp_params p;
    p.num_inputs = 2;
    p.num_outputs = 2;
    p.columns = 3;
    // node0 = NAND(x0,x1) (active), node1 inactive, node2 = NOR(node0, x1)
    const genotype g( p, { 0, 0, 1, 1, 0, 0, 1, 2, 1, 4, 0 } );
    const auto n = to_netlist( decode( g ), g, signal_naming::generic( 2, 2 ) );
    REQUIRE( n.gate_count() == 2u );
    CHECK( n.gates[0] == gate{ gate_kind::nand, 0, 1 } );
    CHECK( n.gates[1] == gate{ gate_kind::nor, 2, 1 } );
    CHECK( n.output_sources == std::vector<std::size_t>{ 3, 0 } );
    CHECK( n.signal_name( 3 ) == "g1" );
    CHECK( n.inputs == std::vector<std::string>{ "x0", "x1" } );
  }

  TEST_CASE( "table naming" )
  {
    const auto m = read_kiss2( FSMCGP_DATA_DIR "/mcnc/lion9.kiss2" );
    const auto names = signal_naming::for_table( build_truth_table( m, encode_states( m ) ) );
    REQUIRE( names.inputs.size() == 6u );
    CHECK( names.inputs[0].name == "in0" );
    CHECK( names.inputs[0].var == 5u );
    CHECK( names.inputs[1].var == 4u );
    CHECK( names.inputs[2].name == "s0" );
    CHECK( names.inputs[2].var == 0u );
    CHECK( names.outputs == std::vector<std::string>{ "ns0", "ns1", "ns2", "ns3", "out0" } );
  }

  TEST_CASE( "verification finds exactly the wrong rows" )
  {
    const auto& s = detector();
    const auto ok = verify_netlist( s.core, s.table );
    CHECK( ok.passed() );
    CHECK( ok.rows_checked == s.table.num_rows() );
    CHECK( ok.care_bits == s.table.care_count() );

    auto broken = s.table;
    std::size_t flipped = 0;
    for ( std::size_t r = 0; r < broken.num_rows() && flipped < 3; r += 3 )
    {
      if ( broken.care_bit( r, 0 ) )
      {
        broken.set( r, 0, !broken.desired_bit( r, 0 ) );
        ++flipped;
      }
    }
    const auto bad = verify_netlist( s.core, broken );
    CHECK( bad.mismatches.size() == flipped );
    CHECK( evaluate_scalar( s.g, broken ).mismatches == flipped );
    std::ostringstream out;
    bad.write( out, s.core );
    CHECK( out.str().find( "FAIL" ) != std::string::npos );
  }

  TEST_CASE( "assembled machine" )
  {
    const auto& s = detector();
    CHECK( s.fn.latches.size() == 3u );
    CHECK( s.fn.primary_inputs.size() == 1u );
    CHECK( s.fn.primary_outputs.size() == 1u );
    CHECK( s.fn.state_codes.size() == 6u );
    CHECK( s.fn.state_codes[0] == std::pair<std::string, std::string>{ "S0", "000" } );

    const auto lion = read_kiss2( FSMCGP_DATA_DIR "/mcnc/lion9.kiss2" );
    CHECK( state_bits_for( lion.states.size() ) == 4u );
    auto bare = s.core;
    bare.outputs[0] = "zz";
    CHECK_THROWS_AS( assemble_fsm( bare, s.enc, s.machine ), netlist_error );
  }

  TEST_CASE( "BLIF layout" )
  {
    const auto& s = detector();
    const auto blif = export_blif( s.fn );
    CHECK( blif.rfind( "# state S0 000\n", 0 ) == 0u );
    CHECK( blif.find( ".model 10101\n.inputs in0\n.outputs out0\n.clock clk\n" ) != std::string::npos );
    CHECK( blif.find( ".latch ns0 s0 re clk 0\n" ) != std::string::npos );
    CHECK( count( blif, ".latch " ) == 3u );
    CHECK( count( blif, ".names " ) == s.core.gate_count() + s.core.outputs.size() );
    CHECK( blif.substr( blif.size() - 5 ) == ".end\n" );
  }

  TEST_CASE( "BLIF round trip preserves the function" )
  {
    for ( const auto* name : { "10101", "0001000" } )
    {
      CAPTURE( name );
      const auto s = solve( load_builtin( name ), 2 );
      const auto text = export_blif( s.fn );
      const auto back = parse_blif( text );
      CHECK( back.model == s.fn.model );
      CHECK( back.gate_count() == s.fn.gate_count() );
      CHECK( back.latches.size() == s.fn.latches.size() );
      CHECK( back.state_codes == s.fn.state_codes );
      CHECK( back.core.inputs == s.core.inputs );
      CHECK( back.core.input_vars == s.core.input_vars );
      CHECK( back.core.outputs == s.core.outputs );
      CHECK( verify_netlist( back.core, s.table ).passed() );
      // a second pass is a fixed point
      CHECK( export_blif( parse_blif( export_blif( back ) ) ) == export_blif( back ) );
    }
  }

  TEST_CASE( "combinational BLIF round trip" )
  {
    const auto& s = detector();
    const auto& p = s.g.params();
    const auto n = to_netlist( decode( s.g ), s.g, signal_naming::generic( p.num_inputs, p.num_outputs ) );
    const auto back = parse_blif( export_blif( n, "comb" ) );
    CHECK( back.latches.empty() );
    CHECK( back.core.input_vars == n.input_vars );
    auto tt = s.table;
    CHECK( verify_netlist( back.core, tt ).passed() );
  }

  TEST_CASE( "BLIF reader diagnostics" )
  {
    CHECK_THROWS_AS( parse_blif( ".model m\n.inputs a b\n.outputs y\n.names a b y\n11 1\n.end\n" ), netlist_error );
    CHECK_THROWS_AS( parse_blif( ".model m\n.inputs a\n.outputs y\n.names y q y\n00 1\n.names a q\n1 1\n.end\n" ),
                     netlist_error );
    CHECK_THROWS_AS( parse_blif( ".model m\n.inputs a\n.outputs y\n.names a z y\n00 1\n.end\n" ), netlist_error );
    CHECK_THROWS_AS( parse_blif( ".model m\n.inputs a\n.outputs y\n.subckt foo\n.end\n" ), netlist_error );
    // alternative NAND cover and continuation lines are accepted
    const auto fn = parse_blif( ".model m\n.inputs x0 \\\n x1\n.outputs y0\n.names x0 x1 y0\n00 1\n01 1\n10 1\n.end\n" );
    REQUIRE( fn.core.gates.size() == 1u );
    CHECK( fn.core.gates[0].kind == gate_kind::nand );
  }

  TEST_CASE( "DOT rendering counts" )
  {
    const auto& s = detector();
    const auto dot = export_dot( s.fn );
    const auto nands = static_cast<std::size_t>(
        std::count_if( s.core.gates.begin(), s.core.gates.end(), []( const gate& g ) { return g.kind == gate_kind::nand; } ) );
    CHECK( count( dot, "shape=invhouse" ) == nands );
    CHECK( count( dot, "shape=invtriangle" ) == s.core.gate_count() - nands );
    CHECK( count( dot, "shape=box" ) == 3u );
    CHECK( count( dot, "shape=cds" ) == 2u );
    CHECK( count( dot, " -> " ) == 2u * s.core.gate_count() + 3u + 1u );
    CHECK( dot.rfind( "digraph \"10101\" {\n", 0 ) == 0u );
    CHECK( dot.substr( dot.size() - 2 ) == "}\n" );

    const auto comb = export_dot( s.core, "core" );
    CHECK( count( comb, "shape=cds" ) == s.core.inputs.size() + s.core.outputs.size() );
    CHECK( count( comb, " -> " ) == 2u * s.core.gate_count() + s.core.outputs.size() );
  }

  TEST_CASE( "co-simulation agrees with direct genotype simulation" )
  {
    const auto& s = detector();
    rng gen( 3 );
    for ( int run = 0; run < 100; ++run )
    {
      const auto stim = random_stimulus( 1, 50, gen );
      const auto rep = simulate_fsm( s.fn, s.machine, s.enc, stim );
      CHECK( rep.passed() );
      CHECK( rep.cycles == 50u );
      CHECK( rep.compared_cycles == 50u );
      CHECK( rep.output_trace == simulate_genotype( s, stim ) );
      CHECK( rep.output_trace == oracle::simulate_symbolic( s.machine, stim ) );
    }
  }

  TEST_CASE( "10101 netlist asserts after the fifth symbol" )
  {
    const auto& s = detector();
    const std::vector<std::string> stim{ "1", "0", "1", "0", "1", "0" };
    const auto rep = simulate_fsm( s.fn, s.machine, s.enc, stim );
    REQUIRE( rep.passed() );
    CHECK( rep.output_trace == std::vector<std::string>{ "0", "0", "0", "0", "0", "1" } );
  }

  TEST_CASE( "co-simulation reports a divergence" )
  {
    const auto& s = detector();
    // a different detector with the same port shape
    const auto other = load_builtin( "0001000" );
    const auto other_enc = encode_states( other );
    auto fn = s.fn;
    rng gen( 4 );
    bool diverged = false;
    for ( int run = 0; run < 20 && !diverged; ++run )
    {
      const auto stim = random_stimulus( 1, 50, gen );
      diverged = !simulate_fsm( fn, other, other_enc, stim ).passed();
    }
    CHECK( diverged );
    const std::vector<std::string> bad{ "2" };
    CHECK_THROWS_AS( simulate_fsm( s.fn, s.machine, s.enc, bad ), netlist_error );
  }

  TEST_CASE( "unspecified transitions are unconstrained" )
  {
    // state B has no transition on input 1
    const auto m = parse_kiss2( "0 A B 0\n1 A A 1\n0 B A 1\n" );
    const auto enc = encode_states( m );
    const auto tt = build_truth_table( m, enc );
    cgp_params p;
    p.num_inputs = tt.num_vars;
    p.num_outputs = tt.num_outs;
    p.columns = 10;
    evolve_config cfg;
    cfg.seed = 1;
    const auto rep = evolve( tt, p, cfg );
    REQUIRE( rep.solved );
    const auto fn = assemble_fsm( to_netlist( decode( rep.final_genotype ), rep.final_genotype, signal_naming::for_table( tt ) ),
                                  enc, m );
    const std::vector<std::string> stim{ "0", "1", "1", "0" };
    const auto sim = simulate_fsm( fn, m, enc, stim );
    CHECK( sim.passed() );
    REQUIRE_FALSE( sim.unconstrained_cycles.empty() );
    CHECK( sim.unconstrained_cycles.front() == 1u );
  }
}
