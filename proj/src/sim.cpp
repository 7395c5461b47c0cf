#include <mvtlg/sim.hpp>

#include <algorithm>
#include <sstream>

namespace mvtlg
{

std::string_view to_string( fault_kind k )
{
  switch ( k )
  {
  case fault_kind::floating_net:
    return "FloatingNet";
  case fault_kind::contention:
    return "Contention";
  case fault_kind::uninitialized_latch:
    return "UninitializedLatch";
  }
  return "?";
}

std::string fault::describe( netlist const& nl ) const
{
  std::ostringstream os;
  os << to_string( kind );
  if ( kind == fault_kind::uninitialized_latch )
  {
    os << " at gate " << where;
  }
  else
  {
    os << " on net " << where;
    if ( where < nl.nets().size() && !nl.net_at( where ).name.empty() )
      os << " '" << nl.net_at( where ).name << "'";
  }
  if ( !inputs.empty() )
  {
    os << " for input (";
    for ( std::size_t i = 0; i < inputs.size(); ++i )
      os << ( i ? "," : "" ) << inputs[i];
    os << ")";
  }
  return os.str();
}

simulator::simulator( netlist const& nl ) : nl_( &nl ), prog_( compile_program( nl ) )
{
}

sim_state simulator::initial_state() const
{
  sim_state st;
  st.config.assign( prog_.num_config_latches, 0 );
  st.cells.assign( prog_.state_latch_inputs.size(), std::nullopt );
  return st;
}

void simulator::check_inputs( std::span<int const> inputs ) const
{
  if ( inputs.size() != prog_.input_nets.size() )
  {
    throw error( "expected " + std::to_string( prog_.input_nets.size() ) + " input values, got " + std::to_string( inputs.size() ) );
  }
  for ( std::size_t i = 0; i < inputs.size(); ++i )
  {
    if ( inputs[i] < 0 || inputs[i] > prog_.input_kinds[i].max_level() )
    {
      throw error( "input '" + nl_->port_name( nl_->inputs()[i] ) + "' = " + std::to_string( inputs[i] ) + " is out of range for " + to_string( prog_.input_kinds[i] ) );
    }
  }
}

void simulator::raise( fault f, sim_state& state ) const
{
  auto const what = f.describe( *nl_ );
  state.fault_log.push_back( f );
  state.net_values.clear();
  throw fault_error( std::move( f ), what );
}

std::vector<int> simulator::eval( std::span<int const> inputs, sim_state& state ) const
{
  check_inputs( inputs );
  if ( state.config.size() != prog_.num_config_latches || state.cells.size() != prog_.state_latch_inputs.size() )
  {
    throw error( "simulation state does not belong to this netlist" );
  }
  for ( std::size_t i = 0; i < state.cells.size(); ++i )
  {
    if ( !state.cells[i] )
      raise( { fault_kind::uninitialized_latch, nl_->state_latches()[i], { inputs.begin(), inputs.end() } }, state );
  }

  auto& v = state.net_values;
  v.assign( prog_.num_nets, 0 );
  std::optional<fault> first;

  for ( auto const& op : prog_.ops )
  {
    auto const* args = prog_.args.data() + op.arg_begin;
    auto const argc = op.arg_end - op.arg_begin;
    int r = 0;
    switch ( op.code )
    {
    case program::op_code::input:
      r = inputs[op.param];
      break;
    case program::op_code::constant:
      r = op.param;
      break;
    case program::op_code::config_latch:
      r = state.config[op.param] ? 1 : 0;
      break;
    case program::op_code::state_latch:
      r = *state.cells[op.param];
      break;
    case program::op_code::threshold:
      r = v[args[0]] < 0 ? v[args[0]] : ( v[args[0]] > op.param ? 1 : 0 );
      break;
    case program::op_code::and_:
      r = 1;
      for ( uint32_t i = 0; i < argc; ++i )
        r = std::min( r, v[args[i]] );
      break;
    case program::op_code::or_:
    {
      int lo = 1, hi = 0;
      for ( uint32_t i = 0; i < argc; ++i )
      {
        lo = std::min( lo, v[args[i]] );
        hi = std::max( hi, v[args[i]] );
      }
      r = lo < 0 ? lo : hi;
      break;
    }
    case program::op_code::not_:
      r = v[args[0]] < 0 ? v[args[0]] : 1 - v[args[0]];
      break;
    case program::op_code::invert:
      r = v[args[0]] < 0 ? v[args[0]] : op.param - v[args[0]];
      break;
    case program::op_code::resolve:
    {
      int poison = 0, conducting = 0, value = 0;
      for ( uint32_t i = 0; i < argc; i += 2 )
      {
        auto const data = v[args[i]];
        auto const control = v[args[i + 1]];
        if ( control < 0 )
          poison = std::min( poison, control );
        else if ( control == 1 )
        {
          ++conducting;
          value = data;
          poison = std::min( poison, std::min( data, 0 ) );
        }
      }
      if ( poison < 0 )
        r = poison;
      else if ( conducting == 1 )
        r = value;
      else
      {
        r = conducting == 0 ? level_code::floating : level_code::contention;
        if ( op.in_cone && !first )
        {
          first = fault{ conducting == 0 ? fault_kind::floating_net : fault_kind::contention, op.out, { inputs.begin(), inputs.end() } };
        }
      }
      break;
    }
    }
    v[op.out] = r;
  }

  if ( first )
    raise( std::move( *first ), state );

  for ( std::size_t i = 0; i < state.cells.size(); ++i )
    state.cells[i] = v[prog_.state_latch_inputs[i]];

  std::vector<int> outs;
  outs.reserve( prog_.output_nets.size() );
  for ( auto n : prog_.output_nets )
    outs.push_back( v[n] );
  return outs;
}

std::vector<int> simulator::step( std::span<int const> inputs, sim_state& state ) const
{
  auto const clk = nl_->clock_input();
  if ( !clk )
  {
    throw error( "netlist '" + nl_->type_name() + "' has no clock input" );
  }
  if ( inputs.size() + 1 != prog_.input_nets.size() )
  {
    throw error( "expected " + std::to_string( prog_.input_nets.size() - 1 ) + " input values per step, got " + std::to_string( inputs.size() ) );
  }
  std::vector<int> full( inputs.begin(), inputs.end() );
  full.insert( full.begin() + static_cast<std::ptrdiff_t>( *clk ), 0 );
  eval( full, state );
  full[*clk] = 1;
  return eval( full, state );
}

void simulator::load_config( config_bitstream const& bits, sim_state& state ) const
{
  if ( bits.size() != prog_.num_config_latches )
  {
    throw error( "bitstream has " + std::to_string( bits.size() ) + " bits, netlist has " + std::to_string( prog_.num_config_latches ) + " configuration latches" );
  }
  state.config.assign( bits.bits.begin(), bits.bits.end() );
  state.net_values.clear();
}

void simulator::reset( std::span<int const> values, sim_state& state ) const
{
  if ( values.size() != prog_.num_registers )
  {
    throw error( "reset needs " + std::to_string( prog_.num_registers ) + " register values, got " + std::to_string( values.size() ) );
  }
  state.cells.assign( prog_.state_latch_inputs.size(), std::nullopt );
  for ( std::size_t i = 0; i < state.cells.size(); ++i )
  {
    auto const reg = prog_.state_latch_regs[i];
    auto const levels = nl_->net_at( prog_.state_latch_inputs[i] ).kind.levels;
    if ( values[reg] < 0 || values[reg] >= levels )
    {
      throw error( "reset value " + std::to_string( values[reg] ) + " out of range for register " + std::to_string( reg ) );
    }
    state.cells[i] = values[reg];
  }
  state.net_values.clear();
}

/* stateless entry points */

namespace
{

std::vector<int> levels_of( std::span<mv_value const> values )
{
  std::vector<int> out;
  out.reserve( values.size() );
  for ( auto const& v : values )
    out.push_back( v.value() );
  return out;
}

std::vector<mv_value> tag_outputs( netlist const& nl, std::vector<int> const& raw )
{
  std::vector<mv_value> out;
  out.reserve( raw.size() );
  for ( std::size_t i = 0; i < raw.size(); ++i )
    out.emplace_back( raw[i], radix( nl.port_kind( nl.outputs()[i] ).levels ) );
  return out;
}

void check_radices( netlist const& nl, std::span<mv_value const> inputs, bool skip_clock )
{
  std::size_t port = 0;
  for ( auto const& v : inputs )
  {
    if ( skip_clock && nl.clock_input() && port == *nl.clock_input() )
      ++port;
    if ( port < nl.inputs().size() && nl.port_kind( nl.inputs()[port] ).levels != v.base().n() )
    {
      throw error( "input '" + nl.port_name( nl.inputs()[port] ) + "' has radix " + std::to_string( nl.port_kind( nl.inputs()[port] ).levels ) +
                   ", value has radix " + std::to_string( v.base().n() ) );
    }
    ++port;
  }
}

} // namespace

sim_state make_sim_state( netlist const& nl )
{
  return simulator( nl ).initial_state();
}

std::vector<mv_value> eval_combinational( netlist const& nl, std::span<mv_value const> inputs, sim_state& state )
{
  check_radices( nl, inputs, false );
  return tag_outputs( nl, simulator( nl ).eval( levels_of( inputs ), state ) );
}

void load_config( netlist const& nl, config_bitstream const& bits, sim_state& state )
{
  simulator( nl ).load_config( bits, state );
}

std::vector<mv_value> step_sequential( netlist const& nl, std::span<mv_value const> inputs, sim_state& state )
{
  check_radices( nl, inputs, true );
  return tag_outputs( nl, simulator( nl ).step( levels_of( inputs ), state ) );
}

void reset_state( netlist const& nl, std::span<int const> register_values, sim_state& state )
{
  simulator( nl ).reset( register_values, state );
}

} // namespace mvtlg
