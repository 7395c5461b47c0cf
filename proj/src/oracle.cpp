#include <mvtlg/oracle.hpp>

#include <mvtlg/batch.hpp>
#include <mvtlg/sim.hpp>

#include <algorithm>
#include <random>

namespace mvtlg
{

namespace
{

/* positional index computed here rather than through tt_index */
uint64_t lookup_index( truth_table const& tt, std::span<int const> inputs )
{
  if ( static_cast<int>( inputs.size() ) != tt.arity() )
  {
    throw error( "oracle: table arity " + std::to_string( tt.arity() ) + " but " + std::to_string( inputs.size() ) + " inputs given" );
  }
  uint64_t k = 0;
  for ( auto x : inputs )
  {
    if ( x < 0 || x >= tt.base().n() )
      throw error( "oracle: input level " + std::to_string( x ) + " out of range" );
    k = k * static_cast<uint64_t>( tt.base().n() ) + static_cast<uint64_t>( x );
  }
  return k;
}

std::vector<int> digits_of( uint64_t k, int levels, std::size_t m )
{
  std::vector<int> d( m );
  for ( std::size_t j = m; j-- > 0; )
  {
    d[j] = static_cast<int>( k % levels );
    k /= levels;
  }
  return d;
}

void record( equivalence_report& rep, mismatch m, std::size_t cap )
{
  ++rep.mismatch_count;
  if ( rep.mismatches.size() < cap )
    rep.mismatches.push_back( std::move( m ) );
}

} // namespace

int oracle_eval( truth_table const& tt, std::span<int const> inputs )
{
  return tt.entries()[lookup_index( tt, inputs )];
}

mv_value oracle_eval( truth_table const& tt, std::span<mv_value const> inputs )
{
  std::vector<int> levels;
  for ( auto const& v : inputs )
  {
    if ( v.base() != tt.base() )
      throw error( "oracle: input radix differs from table radix" );
    levels.push_back( v.value() );
  }
  return mv_value( oracle_eval( tt, levels ), tt.base() );
}

std::pair<truth_table, truth_table> reference_half_adder( radix r )
{
  auto const n = r.n();
  std::vector<int> sum, carry;
  for ( int x1 = 0; x1 < n; ++x1 )
  {
    for ( int x0 = 0; x0 < n; ++x0 )
    {
      sum.push_back( ( x1 + x0 ) % n );
      carry.push_back( x1 + x0 >= n ? 1 : 0 );
    }
  }
  return { truth_table( r, 2, std::move( sum ), "sum" ), truth_table( r, 2, std::move( carry ), "carry" ) };
}

equivalence_report check_equivalence( netlist const& nl, std::span<truth_table const> tables,
                                      std::optional<config_bitstream> const& config, equivalence_options const& options )
{
  if ( nl.is_sequential() )
    throw error( "check_equivalence: netlist is sequential; use check_fsm_equivalence" );
  if ( tables.size() != nl.outputs().size() )
  {
    throw error( "check_equivalence: netlist has " + std::to_string( nl.outputs().size() ) + " outputs but " + std::to_string( tables.size() ) + " tables were given" );
  }
  auto const m = nl.inputs().size();
  auto const& first = tables.front();
  for ( auto const& tt : tables )
  {
    if ( tt.arity() != static_cast<int>( m ) || tt.base() != first.base() )
    {
      throw error( "check_equivalence: table is radix " + std::to_string( tt.base().n() ) + ", arity " + std::to_string( tt.arity() ) +
                   " but the netlist has " + std::to_string( m ) + " inputs" );
    }
  }
  for ( auto port : nl.inputs() )
  {
    if ( nl.port_kind( port ) != signal_kind::of( first.base() ) )
      throw error( "check_equivalence: input '" + nl.port_name( port ) + "' is " + to_string( nl.port_kind( port ) ) + ", table radix is " + std::to_string( first.base().n() ) );
  }
  auto const has_latches = !nl.latch_order().empty();
  if ( has_latches && !config )
    throw error( "check_equivalence: fabric netlist needs a bitstream" );
  if ( !has_latches && config && config->size() != 0 )
    throw error( "check_equivalence: bitstream given for a netlist without configuration latches" );

  simulator sim( nl );
  auto state = sim.initial_state();
  if ( config )
    sim.load_config( *config, state );

  equivalence_report rep;
  rep.space_size = first.size();
  rep.seed = options.seed;
  rep.exhaustive = rep.space_size <= options.exhaustive_cap;

  std::vector<uint64_t> indices;
  if ( rep.exhaustive )
  {
    indices.resize( rep.space_size );
    for ( uint64_t k = 0; k < rep.space_size; ++k )
      indices[k] = k;
  }
  else
  {
    std::mt19937_64 rng( options.seed );
    std::uniform_int_distribution<uint64_t> pick( 0, rep.space_size - 1 );
    indices.resize( options.exhaustive_cap );
    for ( auto& k : indices )
      k = pick( rng );
    std::sort( indices.begin(), indices.end() );
  }
  rep.total_vectors = indices.size();

  auto const levels = first.base().n();
  auto expected_for = [&]( uint64_t k ) {
    std::vector<int> e;
    for ( auto const& tt : tables )
      e.push_back( tt.entries()[k] );
    return e;
  };
  auto scalar_check = [&]( uint64_t k ) {
    auto const ins = digits_of( k, levels, m );
    auto expected = expected_for( k );
    try
    {
      auto got = sim.eval( ins, state );
      if ( got != expected )
        record( rep, { k, ins, std::move( expected ), std::move( got ), {} }, options.max_mismatches );
    }
    catch ( fault_error const& e )
    {
      record( rep, { k, ins, std::move( expected ), {}, e.what() }, options.max_mismatches );
    }
  };

  if ( options.use_batch && batch_evaluator::supports( nl ) )
  {
    batch_evaluator batch( nl );
    constexpr std::size_t chunk = 1u << 14;
    for ( std::size_t start = 0; start < indices.size(); start += chunk )
    {
      auto const count = std::min( chunk, indices.size() - start );
      std::vector<int8_t> inputs( m * count );
      for ( std::size_t l = 0; l < count; ++l )
      {
        auto const d = digits_of( indices[start + l], levels, m );
        for ( std::size_t j = 0; j < m; ++j )
          inputs[j * count + l] = static_cast<int8_t>( d[j] );
      }
      auto const res = batch.evaluate( inputs, count, state.config );
      for ( std::size_t l = 0; l < count; ++l )
      {
        auto const k = indices[start + l];
        if ( res.faulty[l] )
        {
          scalar_check( k );
          continue;
        }
        bool same = true;
        for ( std::size_t o = 0; o < tables.size(); ++o )
          same = same && res.output( o, l ) == tables[o].entries()[k];
        if ( !same )
          scalar_check( k );
      }
    }
  }
  else
  {
    for ( auto k : indices )
      scalar_check( k );
  }

  std::stable_sort( rep.mismatches.begin(), rep.mismatches.end(), []( auto const& a, auto const& b ) { return a.index < b.index; } );
  return rep;
}

equivalence_report check_equivalence( netlist const& nl, truth_table const& tt,
                                      std::optional<config_bitstream> const& config, equivalence_options const& options )
{
  return check_equivalence( nl, std::span<truth_table const>( &tt, 1 ), config, options );
}

std::vector<int> fsm_next_state( fsm_spec const& spec, std::span<int const> state, std::span<int const> input )
{
  std::vector<int> args( state.begin(), state.end() );
  args.insert( args.end(), input.begin(), input.end() );
  std::vector<int> next;
  for ( auto const& tt : spec.transition )
    next.push_back( oracle_eval( tt, args ) );
  return next;
}

std::vector<int> fsm_outputs( fsm_spec const& spec, std::span<int const> state, std::span<int const> input )
{
  std::vector<int> args( state.begin(), state.end() );
  args.insert( args.end(), input.begin(), input.end() );
  std::vector<int> out;
  for ( auto const& tt : spec.outputs )
    out.push_back( oracle_eval( tt, args ) );
  return out;
}

equivalence_report check_fsm_equivalence( netlist const& nl, fsm_spec const& spec, std::span<int const> reset,
                                          std::span<std::vector<std::vector<int>> const> input_sequences )
{
  spec.validate();
  if ( static_cast<int>( reset.size() ) != spec.state_arity )
    throw error( "check_fsm_equivalence: reset has " + std::to_string( reset.size() ) + " digits, machine has " + std::to_string( spec.state_arity ) );
  if ( nl.outputs().size() != static_cast<std::size_t>( spec.state_arity ) + spec.outputs.size() )
    throw error( "check_fsm_equivalence: netlist outputs do not match the machine" );

  simulator sim( nl );
  equivalence_report rep;
  rep.exhaustive = true;
  uint64_t step_number = 0;
  for ( auto const& seq : input_sequences )
  {
    auto state = sim.initial_state();
    sim.reset( reset, state );
    std::vector<int> model( reset.begin(), reset.end() );
    for ( auto const& input : seq )
    {
      if ( static_cast<int>( input.size() ) != spec.input_arity )
        throw error( "check_fsm_equivalence: step input has the wrong number of digits" );
      model = fsm_next_state( spec, model, input );
      auto expected = model;
      auto const outs = fsm_outputs( spec, model, input );
      expected.insert( expected.end(), outs.begin(), outs.end() );
      ++rep.total_vectors;
      try
      {
        auto got = sim.step( input, state );
        if ( got != expected )
        {
          record( rep, { step_number, input, std::move( expected ), std::move( got ), {} }, 64 );
          break;
        }
      }
      catch ( fault_error const& e )
      {
        record( rep, { step_number, input, std::move( expected ), {}, e.what() }, 64 );
        break;
      }
      ++step_number;
    }
  }
  rep.space_size = rep.total_vectors;
  return rep;
}

std::vector<std::vector<std::vector<int>>> all_sequences( radix r, int input_arity, int length )
{
  auto const per_step = input_arity == 0 ? uint64_t{ 1 } : table_size( r, input_arity );
  uint64_t total = 1;
  for ( int t = 0; t < length; ++t )
    total *= per_step;

  std::vector<std::vector<std::vector<int>>> seqs;
  seqs.reserve( total );
  for ( uint64_t code = 0; code < total; ++code )
  {
    std::vector<std::vector<int>> seq;
    auto rest = code;
    for ( int t = 0; t < length; ++t )
    {
      seq.push_back( digits_of( rest % per_step, r.n(), static_cast<std::size_t>( input_arity ) ) );
      rest /= per_step;
    }
    seqs.push_back( std::move( seq ) );
  }
  return seqs;
}

std::vector<flip_classification> classify_bit_flips( netlist const& fabric, truth_table const& tt, config_bitstream const& config )
{
  std::vector<flip_classification> result;
  for ( std::size_t bit = 0; bit < config.size(); ++bit )
  {
    auto mutated = config;
    mutated.bits[bit] ^= 1;
    auto const rep = check_equivalence( fabric, tt, mutated );
    if ( !rep.passed() )
    {
      result.push_back( { bit, flip_outcome::detected, rep.mismatch_count } );
    }
    else if ( rep.exhaustive )
    {
      result.push_back( { bit, flip_outcome::behavior_identical, 0 } );
    }
    else
    {
      throw error( "classify_bit_flips: flip of bit " + std::to_string( bit ) + " passed sampled verification only" );
    }
  }
  return result;
}

} // namespace mvtlg
