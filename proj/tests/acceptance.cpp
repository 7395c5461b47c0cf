// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <mvtlg/oracle.hpp>
#include <mvtlg/sim.hpp>
#include <mvtlg/synth.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mvtlg;

namespace
{

struct outcome
{
  bool ok{ true };
  std::string detail;

  void require( bool cond, std::string const& what )
  {
    if ( !cond && ok )
    {
      ok = false;
      detail = what;
    }
  }
};

std::vector<int> digits( uint64_t k, int n, int m )
{
  std::vector<int> d( static_cast<std::size_t>( m ) );
  for ( int j = m - 1; j >= 0; --j )
  {
    d[static_cast<std::size_t>( j )] = static_cast<int>( k % static_cast<uint64_t>( n ) );
    k /= static_cast<uint64_t>( n );
  }
  return d;
}

uint64_t power( int n, int m )
{
  uint64_t p = 1;
  for ( int i = 0; i < m; ++i )
    p *= static_cast<uint64_t>( n );
  return p;
}

std::string show( std::vector<int> const& v )
{
  std::ostringstream os;
  os << "(";
  for ( std::size_t i = 0; i < v.size(); ++i )
    os << ( i ? "," : "" ) << v[i];
  os << ")";
  return os.str();
}

std::vector<int> eval( netlist const& nl, std::vector<int> const& ins )
{
  simulator sim( nl );
  auto st = sim.initial_state();
  return sim.eval( ins, st );
}

std::vector<synth_strategy> strategies()
{
  return { synth_strategy::decoder(), synth_strategy::mux( true ), synth_strategy::mux( false ) };
}

/* ternary decoder rows: x -> (b2, b1, b0) */
outcome decoder_rows()
{
  outcome o;
  int const table[3][4] = { { 0, 0, 0, 1 }, { 1, 0, 1, 0 }, { 2, 1, 0, 0 } };
  auto const dec = build_decoder_1( radix( 3 ) );
  for ( auto const& row : table )
  {
    auto const b = eval( dec, { row[0] } );
    o.require( b[2] == row[1] && b[1] == row[2] && b[0] == row[3], "ternary row x=" + std::to_string( row[0] ) );
  }
  for ( int n = 2; n <= 5; ++n )
  {
    auto const d = build_decoder_1( radix( n ) );
    for ( int x = 0; x < n; ++x )
    {
      auto const b = eval( d, { x } );
      for ( int k = 0; k < n; ++k )
        o.require( b[k] == ( k == x ), "one-hot at N=" + std::to_string( n ) + " x=" + std::to_string( x ) );
    }
  }
  return o;
}

/* two-to-nine rows: x1, x0, (b1_2 b1_1 b1_0), (b0_2 b0_1 b0_0), lit k */
outcome two_to_nine_rows()
{
  outcome o;
  int const table[9][9] = {
      { 0, 0, 0, 0, 1, 0, 0, 1, 0 }, { 0, 1, 0, 0, 1, 0, 1, 0, 1 }, { 0, 2, 0, 0, 1, 1, 0, 0, 2 },
      { 1, 0, 0, 1, 0, 0, 0, 1, 3 }, { 1, 1, 0, 1, 0, 0, 1, 0, 4 }, { 1, 2, 0, 1, 0, 1, 0, 0, 5 },
      { 2, 0, 1, 0, 0, 0, 0, 1, 6 }, { 2, 1, 1, 0, 0, 0, 1, 0, 7 }, { 2, 2, 1, 0, 0, 1, 0, 0, 8 } };
  auto const dec1 = build_decoder_1( radix( 3 ) );
  auto const dec2 = build_decoder_m( radix( 3 ), 2 );
  for ( auto const& row : table )
  {
    auto const hi = eval( dec1, { row[0] } );
    auto const lo = eval( dec1, { row[1] } );
    auto const label = show( { row[0], row[1] } );
    o.require( hi[2] == row[2] && hi[1] == row[3] && hi[0] == row[4], "x1 digit columns at " + label );
    o.require( lo[2] == row[5] && lo[1] == row[6] && lo[0] == row[7], "x0 digit columns at " + label );
    auto const b = eval( dec2, { row[0], row[1] } );
    for ( int k = 0; k < 9; ++k )
      o.require( b[k] == ( k == row[8] ), "b" + std::to_string( k ) + " at " + label );
    o.require( tt_index( std::vector<int>{ row[0], row[1] }, radix( 3 ) ) == static_cast<uint64_t>( row[8] ), "index at " + label );
  }
  return o;
}

/* ternary half adder rows: x1, x0, sum, carry */
outcome half_adder_rows()
{
  outcome o;
  int const table[9][4] = { { 0, 0, 0, 0 }, { 0, 1, 1, 0 }, { 0, 2, 2, 0 }, { 1, 0, 1, 0 }, { 1, 1, 2, 0 },
                            { 1, 2, 0, 1 }, { 2, 0, 2, 0 }, { 2, 1, 0, 1 }, { 2, 2, 1, 1 } };
  std::vector<int> sum, carry;
  for ( auto const& row : table )
  {
    sum.push_back( row[2] );
    carry.push_back( row[3] );
  }
  std::vector<truth_table> tables{ truth_table( radix( 3 ), 2, sum, "sum" ), truth_table( radix( 3 ), 2, carry, "carry" ) };
  for ( auto s : strategies() )
  {
    auto const nl = synthesize( tables, s );
    for ( auto const& row : table )
      o.require( eval( nl, { row[0], row[1] } ) == std::vector<int>{ row[2], row[3] }, "row " + show( { row[0], row[1] } ) );
    o.require( check_equivalence( nl, tables ).passed(), "exhaustive check" );
  }
  return o;
}

outcome structural_counts()
{
  outcome o;
  for ( int n = 2; n <= 9; ++n )
    o.require( compute_gate_stats( build_decoder_1( radix( n ) ) ).tlg_count == static_cast<std::size_t>( n - 1 ), "TLGs at N=" + std::to_string( n ) );
  o.require( compute_gate_stats( build_mux_m( radix( 3 ), 2, true ) ).instances_of( "mux1" ) == 4, "ternary nine-to-one tree" );
  for ( int n = 2; n <= 5; ++n )
  {
    for ( int m = 2; m <= 4; ++m )
    {
      auto const expected = ( power( n, m ) - 1 ) / static_cast<uint64_t>( n - 1 );
      o.require( compute_gate_stats( build_mux_m( radix( n ), m, true ) ).instances_of( "mux1" ) == expected,
                 "tree blocks at N=" + std::to_string( n ) + " M=" + std::to_string( m ) );
    }
  }
  return o;
}

outcome soundness_sweep()
{
  outcome o;
  std::mt19937_64 rng( 0x6d76746c67ULL );
  for ( int n : { 2, 3, 4 } )
  {
    for ( int m : { 1, 2 } )
    {
      for ( int t = 0; t < 50; ++t )
      {
        auto const tt = truth_table::random( radix( n ), m, rng );
        for ( auto s : strategies() )
        {
          auto const rep = check_equivalence( synthesize( tt, s ), tt );
          o.require( rep.passed() && rep.exhaustive && rep.total_vectors == power( n, m ),
                     "table " + std::to_string( t ) + " at N=" + std::to_string( n ) + " M=" + std::to_string( m ) );
        }
      }
    }
  }
  return o;
}

outcome reconfiguration()
{
  outcome o;
  auto const [sum, carry] = reference_half_adder( radix( 3 ) );
  for ( auto kind : { fabric_kind::decoder, fabric_kind::mux_tree } )
  {
    auto const fabric = build_fabric( kind, radix( 3 ), 2 );
    simulator sim( fabric );
    auto state = sim.initial_state();
    for ( auto const* tt : { &sum, &carry, &sum } )
    {
      sim.load_config( derive_config( *tt, fabric ), state );
      for ( uint64_t k = 0; k < 9; ++k )
      {
        auto const xs = digits( k, 3, 2 );
        o.require( sim.eval( xs, state ) == std::vector<int>{ oracle_eval( *tt, xs ) },
                   std::string( to_string( kind ) ) + " fabric as " + tt->name() + " at " + show( xs ) );
      }
    }
  }
  return o;
}

outcome latch_contract()
{
  outcome o;
  for ( int n : { 3, 4 } )
  {
    auto const latch = build_nary_dlatch( radix( n ) );
    simulator sim( latch );
    for ( int g = 0; g < n; ++g )
      for ( int d = 0; d < n; ++d )
        for ( int prev = 0; prev < n; ++prev )
        {
          auto st = sim.initial_state();
          sim.reset( std::vector<int>{ prev }, st );
          auto const want = g == 0 ? prev : d;
          o.require( sim.eval( std::vector<int>{ d, g }, st ) == std::vector<int>{ want },
                     "latch N=" + std::to_string( n ) + " " + show( { g, d, prev } ) );
        }

    auto const dff = build_nary_dff( radix( n ) );
    simulator ff( dff );
    for ( int g = 0; g < n; ++g )
      for ( int start = 0; start < n; ++start )
      {
        auto st = ff.initial_state();
        ff.reset( std::vector<int>{ start }, st );
        auto const q = ff.eval( std::vector<int>{ 0, g }, st );
        for ( int d = 0; d < n; ++d )
          for ( int rep = 0; rep < 2; ++rep )
            o.require( ff.eval( std::vector<int>{ d, g }, st ) == q, "flip-flop moved under constant clock " + std::to_string( g ) );
      }
    // and it does move on an edge
    auto st = ff.initial_state();
    ff.reset( std::vector<int>{ 0 }, st );
    ff.eval( std::vector<int>{ n - 1, 0 }, st );
    o.require( ff.eval( std::vector<int>{ 0, 1 }, st ) == std::vector<int>{ n - 1 }, "flip-flop capture" );
  }
  return o;
}

outcome state_machines()
{
  outcome o;
  auto const r3 = radix( 3 );
  std::vector<fsm_spec> specs{
      { r3, 1, 0, { truth_table::from_function( r3, 1, []( auto const& x ) { return ( x[0] + 1 ) % 3; } ) }, {}, "up-counter" },
      { r3, 1, 1, { truth_table::from_function( r3, 2, []( auto const& x ) { return ( x[0] + x[1] ) % 3; } ) }, {}, "accumulator" } };
  std::mt19937_64 rng( 20 );
  for ( auto const& spec : specs )
  {
    std::vector<std::vector<std::vector<int>>> seqs;
    for ( int len = 1; len <= 3; ++len )
    {
      auto const all = all_sequences( r3, spec.input_arity, len );
      seqs.insert( seqs.end(), all.begin(), all.end() );
    }
    std::uniform_int_distribution<int> level( 0, 2 );
    for ( int t = 0; t < 100; ++t )
    {
      std::vector<std::vector<int>> seq;
      for ( int s = 0; s < 20; ++s )
      {
        std::vector<int> in;
        for ( int j = 0; j < spec.input_arity; ++j )
          in.push_back( level( rng ) );
        seq.push_back( in );
      }
      seqs.push_back( seq );
    }
    for ( auto s : strategies() )
    {
      auto const nl = compile_fsm( spec, s );
      for ( int reset = 0; reset < 3; ++reset )
      {
        auto const rep = check_fsm_equivalence( nl, spec, std::vector<int>{ reset }, seqs );
        o.require( rep.passed(), spec.name + " from " + std::to_string( reset ) );
      }
    }
  }
  return o;
}

outcome binary_degeneration()
{
  outcome o;
  auto const r2 = radix( 2 );

  // decoders: b_k is the minterm of k
  for ( int m = 1; m <= 3; ++m )
  {
    auto const dec = build_decoder_m( r2, m );
    for ( uint64_t k = 0; k < power( 2, m ); ++k )
    {
      auto const xs = digits( k, 2, m );
      auto const b = eval( dec, xs );
      for ( uint64_t j = 0; j < power( 2, m ); ++j )
      {
        int minterm = 1;
        for ( int bit = 0; bit < m; ++bit )
        {
          auto const want = static_cast<int>( ( j >> bit ) & 1 );
          auto const x = xs[static_cast<std::size_t>( m - 1 - bit )];
          minterm &= want ? x : !x;
        }
        o.require( b[j] == minterm, "binary decoder M=" + std::to_string( m ) + " at " + show( xs ) );
      }
    }
  }

  // 2:1 and 4:1 multiplexers: y = s ? i1 : i0
  for ( auto const& mux : { build_mux_1( r2 ), build_mux_m( r2, 2, true ), build_mux_m( r2, 2, false ) } )
  {
    auto const m = static_cast<int>( mux.inputs().size() ) == 3 ? 1 : 2;
    auto const width = static_cast<int>( mux.inputs().size() );
    for ( uint64_t k = 0; k < power( 2, width ); ++k )
    {
      auto const ins = digits( k, 2, width );
      auto const data = static_cast<int>( power( 2, m ) );
      int sel = 0;
      for ( int j = 0; j < m; ++j )
        sel = ( sel << 1 ) | ins[static_cast<std::size_t>( data + j )];
      // ports list i_{K-1} first
      auto const want = ins[static_cast<std::size_t>( data - 1 - sel )];
      o.require( eval( mux, ins ) == std::vector<int>{ want }, "binary mux " + mux.type_name() + " at " + show( ins ) );
    }
  }

  // half adder: XOR and AND, synthesized and on both fabrics
  auto const xor_tt = truth_table::from_function( r2, 2, []( auto const& x ) { return x[0] ^ x[1]; }, "sum" );
  auto const and_tt = truth_table::from_function( r2, 2, []( auto const& x ) { return x[0] & x[1]; }, "carry" );
  std::vector<truth_table> ha{ xor_tt, and_tt };
  for ( auto s : strategies() )
    o.require( check_equivalence( synthesize( ha, s ), ha ).passed(), "binary half adder" );
  for ( auto kind : { fabric_kind::decoder, fabric_kind::mux_tree, fabric_kind::mux_flat } )
  {
    auto const fabric = build_fabric( kind, r2, 2 );
    o.require( check_equivalence( fabric, xor_tt, derive_config( xor_tt, fabric ) ).passed(), "binary fabric XOR" );
    o.require( check_equivalence( fabric, and_tt, derive_config( and_tt, fabric ) ).passed(), "binary fabric AND" );
  }

  // latch and flip-flop against the binary behavior: transparent while high; rising-edge capture
  auto const latch = build_nary_dlatch( r2 );
  simulator ls( latch );
  for ( int g = 0; g < 2; ++g )
    for ( int d = 0; d < 2; ++d )
      for ( int prev = 0; prev < 2; ++prev )
      {
        auto st = ls.initial_state();
        ls.reset( std::vector<int>{ prev }, st );
        o.require( ls.eval( std::vector<int>{ d, g }, st ) == std::vector<int>{ g ? d : prev }, "binary latch" );
      }
  auto const dff = build_nary_dff( r2 );
  simulator fs( dff );
  std::mt19937_64 rng( 2 );
  std::bernoulli_distribution coin( 0.5 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto st = fs.initial_state();
    fs.reset( std::vector<int>{ 0 }, st );
    int q = 0, clk = 0, d_before_edge = 0;
    for ( int t = 0; t < 32; ++t )
    {
      int const d = coin( rng ), g = coin( rng );
      // the value captured at a rising edge is d as it stood while the clock was low
      if ( clk == 0 && g == 1 )
        q = d_before_edge;
      if ( g == 0 )
        d_before_edge = d;
      clk = g;
      o.require( fs.eval( std::vector<int>{ d, g }, st ) == std::vector<int>{ q }, "binary flip-flop" );
    }
  }

  // toggle machine
  fsm_spec toggle{ r2, 1, 1, { truth_table::from_function( r2, 2, []( auto const& x ) { return x[0] ^ x[1]; } ) }, {}, "toggle" };
  for ( auto s : strategies() )
    o.require( check_fsm_equivalence( compile_fsm( toggle, s ), toggle, std::vector<int>{ 0 }, all_sequences( r2, 1, 6 ) ).passed(), "binary toggle machine" );
  return o;
}

outcome mutation_sensitivity()
{
  outcome o;
  auto const sum = reference_half_adder( radix( 3 ) ).first;
  for ( auto kind : { fabric_kind::decoder, fabric_kind::mux_tree, fabric_kind::mux_flat } )
  {
    auto const fabric = build_fabric( kind, radix( 3 ), 2 );
    auto const bits = derive_config( sum, fabric );
    std::vector<flip_classification> flips;
    try
    {
      flips = classify_bit_flips( fabric, sum, bits );
    }
    catch ( error const& e )
    {
      o.require( false, e.what() );
      continue;
    }
    o.require( flips.size() == bits.size(), "every bit classified" );
    std::size_t detected = 0, identical = 0;
    for ( auto const& f : flips )
    {
      detected += f.outcome == flip_outcome::detected;
      identical += f.outcome == flip_outcome::behavior_identical;
    }
    o.require( detected + identical == bits.size(), "classification total" );
    std::printf( "    %s fabric: %zu bits, %zu detected, %zu behavior-identical\n", std::string( to_string( kind ) ).c_str(), bits.size(), detected, identical );
  }
  return o;
}

} // namespace

int main()
{
  struct criterion
  {
    int id;
    char const* name;
    double limit_s;
    std::function<outcome()> run;
  };
  std::vector<criterion> const criteria{
      { 1, "one-to-three decoder rows and one-hot decode at radices 2-5", 1.0, decoder_rows },
      { 2, "two-to-nine decoder rows", 1.0, two_to_nine_rows },
      { 3, "ternary half adder by both strategies", 1.0, half_adder_rows },
      { 4, "structural counts", 0.0, structural_counts },
      { 5, "synthesis soundness sweep", 30.0, soundness_sweep },
      { 6, "fabric reconfiguration", 1.0, reconfiguration },
      { 7, "latch and flip-flop contract", 1.0, latch_contract },
      { 8, "state machines against software iteration", 10.0, state_machines },
      { 9, "binary degeneration", 1.0, binary_degeneration },
      { 10, "mutation sensitivity", 5.0, mutation_sensitivity } };

  int failures = 0;
  for ( auto const& c : criteria )
  {
    auto const start = std::chrono::steady_clock::now();
    outcome o;
    try
    {
      o = c.run();
    }
    catch ( std::exception const& e )
    {
      o.ok = false;
      o.detail = std::string( "exception: " ) + e.what();
    }
    auto const secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    if ( o.ok && c.limit_s > 0 && secs >= c.limit_s )
    {
      o.ok = false;
      o.detail = "over the time limit";
    }
    std::printf( "criterion %2d: %s  %s (%.3f s%s)%s%s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, secs,
                 c.limit_s > 0 ? ( ", limit " + std::to_string( static_cast<int>( c.limit_s ) ) + " s" ).c_str() : "",
                 o.ok ? "" : ": ", o.detail.c_str() );
    failures += !o.ok;
  }
  std::printf( "%d of %zu criteria passed\n", static_cast<int>( criteria.size() ) - failures, criteria.size() );
  return failures == 0 ? 0 : 1;
}
