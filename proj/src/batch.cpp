#include <mvtlg/batch.hpp>

#include <algorithm>
#include <cstring>

namespace mvtlg
{

bool batch_evaluator::supports( netlist const& nl )
{
  return std::all_of( nl.nets().begin(), nl.nets().end(), []( auto const& n ) { return n.kind.levels <= 127; } );
}

batch_evaluator::batch_evaluator( netlist const& nl, simd::kernel_table const& kernels )
    : prog_( compile_program( nl ) ), kernels_( &kernels )
{
  if ( !supports( nl ) )
  {
    throw error( "batch evaluation needs all radices <= 127" );
  }
}

batch_evaluator::result batch_evaluator::evaluate( std::span<int8_t const> inputs, std::size_t lanes, std::span<uint8_t const> config,
                                                   std::span<std::optional<int> const> cells ) const
{
  auto const num_inputs = prog_.input_nets.size();
  if ( inputs.size() != num_inputs * lanes )
    throw error( "batch input size does not match inputs x lanes" );
  if ( config.size() != prog_.num_config_latches )
    throw error( "batch configuration has " + std::to_string( config.size() ) + " bits, expected " + std::to_string( prog_.num_config_latches ) );
  if ( !prog_.state_latch_inputs.empty() && cells.size() != prog_.state_latch_inputs.size() )
    throw error( "batch evaluation of a sequential netlist needs every storage cell value" );
  for ( auto const& c : cells )
  {
    if ( !c )
      throw error( "batch evaluation with an uninitialized storage cell" );
  }

  auto const& k = *kernels_;
  result res;
  res.lanes = lanes;
  res.outputs.assign( prog_.output_nets.size() * lanes, 0 );
  res.faulty.assign( lanes, 0 );

  std::vector<int8_t> nets( prog_.num_nets * block_lanes );
  std::vector<int8_t> value( block_lanes ), count( block_lanes ), poison( block_lanes );
  std::vector<uint8_t> ignored( block_lanes );

  for ( std::size_t base = 0; base < lanes; base += block_lanes )
  {
    auto const n = std::min( block_lanes, lanes - base );
    auto col = [&]( net_id id ) { return nets.data() + static_cast<std::size_t>( id ) * block_lanes; };

    for ( auto const& op : prog_.ops )
    {
      auto* out = col( op.out );
      auto const* args = prog_.args.data() + op.arg_begin;
      auto const argc = op.arg_end - op.arg_begin;
      switch ( op.code )
      {
      case program::op_code::input:
        std::memcpy( out, inputs.data() + op.param * lanes + base, n );
        break;
      case program::op_code::constant:
        std::memset( out, op.param, n );
        break;
      case program::op_code::config_latch:
        std::memset( out, config[op.param] ? 1 : 0, n );
        break;
      case program::op_code::state_latch:
        std::memset( out, *cells[op.param], n );
        break;
      case program::op_code::threshold:
        k.threshold( col( args[0] ), static_cast<int8_t>( op.param ), out, n );
        break;
      case program::op_code::and_:
      case program::op_code::or_:
      {
        auto const fold = op.code == program::op_code::and_ ? k.and2 : k.or2;
        if ( argc == 1 )
          std::memcpy( out, col( args[0] ), n );
        else
          fold( col( args[0] ), col( args[1] ), out, n );
        for ( uint32_t i = 2; i < argc; ++i )
          fold( out, col( args[i] ), out, n );
        break;
      }
      case program::op_code::not_:
        k.not1( col( args[0] ), out, n );
        break;
      case program::op_code::invert:
        k.invert( col( args[0] ), static_cast<int8_t>( op.param ), out, n );
        break;
      case program::op_code::resolve:
        std::fill_n( value.begin(), n, int8_t{ 0 } );
        std::fill_n( count.begin(), n, int8_t{ 0 } );
        std::fill_n( poison.begin(), n, int8_t{ 0 } );
        for ( uint32_t i = 0; i < argc; i += 2 )
          k.switch_accumulate( col( args[i] ), col( args[i + 1] ), value.data(), count.data(), poison.data(), n );
        k.switch_resolve( value.data(), count.data(), poison.data(), out,
                          op.in_cone ? res.faulty.data() + base : ignored.data(), n );
        break;
      }
    }

    for ( std::size_t o = 0; o < prog_.output_nets.size(); ++o )
      std::memcpy( res.outputs.data() + o * lanes + base, col( prog_.output_nets[o] ), n );
  }
  return res;
}

batch_evaluator::result batch_evaluator::evaluate_indices( uint64_t first, std::size_t count, std::span<uint8_t const> config,
                                                           std::span<std::optional<int> const> cells ) const
{
  auto const m = prog_.input_nets.size();
  if ( m == 0 )
    throw error( "evaluate_indices needs at least one input" );
  auto const levels = prog_.input_kinds.front().levels;
  for ( auto const& kind : prog_.input_kinds )
  {
    if ( kind.levels != levels )
      throw error( "evaluate_indices needs all inputs to share one radix" );
  }

  std::vector<int8_t> inputs( m * count );
  for ( std::size_t l = 0; l < count; ++l )
  {
    auto rest = first + l;
    for ( std::size_t j = m; j-- > 0; )
    {
      inputs[j * count + l] = static_cast<int8_t>( rest % levels );
      rest /= levels;
    }
  }
  return evaluate( inputs, count, config, cells );
}

} // namespace mvtlg
