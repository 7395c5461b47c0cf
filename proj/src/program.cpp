#include <mvtlg/program.hpp>

#include <algorithm>

namespace mvtlg
{

program compile_program( netlist const& nl )
{
  program prog;
  prog.num_nets = nl.nets().size();
  prog.num_config_latches = nl.latch_order().size();
  prog.num_registers = nl.num_registers();

  std::vector<int> input_index( nl.gates().size(), -1 );
  for ( std::size_t i = 0; i < nl.inputs().size(); ++i )
  {
    input_index[nl.inputs()[i]] = static_cast<int>( i );
    prog.input_nets.push_back( nl.port_net( nl.inputs()[i] ) );
    prog.input_kinds.push_back( nl.port_kind( nl.inputs()[i] ) );
  }
  for ( auto port : nl.outputs() )
    prog.output_nets.push_back( nl.port_net( port ) );

  std::vector<int> latch_position( nl.gates().size(), -1 );
  for ( std::size_t i = 0; i < nl.latch_order().size(); ++i )
    latch_position[nl.latch_order()[i]] = static_cast<int>( i );
  for ( std::size_t i = 0; i < nl.state_latches().size(); ++i )
  {
    auto const& g = nl.gate_at( nl.state_latches()[i] );
    latch_position[g.id] = static_cast<int>( i );
    prog.state_latch_inputs.push_back( g.inputs[0] );
    prog.state_latch_regs.push_back( std::get<nary_dlatch>( g.kind ).reg );
  }

  for ( auto const& n : nl.nets() )
    prog.max_levels = std::max( prog.max_levels, n.kind.levels );

  /* backward cone from outputs and storage cell inputs */
  auto const drivers = nl.drivers();
  std::vector<bool> in_cone( prog.num_nets, false );
  std::vector<net_id> stack( prog.output_nets.begin(), prog.output_nets.end() );
  stack.insert( stack.end(), prog.state_latch_inputs.begin(), prog.state_latch_inputs.end() );
  while ( !stack.empty() )
  {
    auto const n = stack.back();
    stack.pop_back();
    if ( in_cone[n] )
      continue;
    in_cone[n] = true;
    for ( auto gid : drivers[n] )
    {
      auto const& g = nl.gate_at( gid );
      if ( std::holds_alternative<nary_dlatch>( g.kind ) )
        continue;
      for ( auto in : g.inputs )
        stack.push_back( in );
    }
  }

  auto const order = levelize( nl );
  prog.ops.reserve( order.size() );
  for ( auto n : order )
  {
    auto const& ds = drivers[n];
    program::op op{ program::op_code::input, n, 0, static_cast<uint32_t>( prog.args.size() ), 0, in_cone[n] };
    auto const& g = nl.gate_at( ds.front() );
    if ( std::holds_alternative<switch_gate>( g.kind ) )
    {
      op.code = program::op_code::resolve;
      for ( auto gid : ds )
      {
        auto const& sw = nl.gate_at( gid );
        prog.args.push_back( sw.inputs[0] );
        prog.args.push_back( sw.inputs[1] );
      }
    }
    else
    {
      prog.args.insert( prog.args.end(), g.inputs.begin(), g.inputs.end() );
      if ( auto const* t = std::get_if<tlg_gate>( &g.kind ) )
      {
        op.code = program::op_code::threshold;
        op.param = t->threshold;
      }
      else if ( std::holds_alternative<and_gate>( g.kind ) )
        op.code = program::op_code::and_;
      else if ( std::holds_alternative<or_gate>( g.kind ) )
        op.code = program::op_code::or_;
      else if ( std::holds_alternative<not_gate>( g.kind ) )
        op.code = program::op_code::not_;
      else if ( auto const* inv = std::get_if<nary_inverter>( &g.kind ) )
      {
        op.code = program::op_code::invert;
        op.param = inv->levels - 1;
      }
      else if ( std::holds_alternative<config_latch>( g.kind ) )
      {
        op.code = program::op_code::config_latch;
        op.param = latch_position[g.id];
      }
      else if ( std::holds_alternative<nary_dlatch>( g.kind ) )
      {
        op.code = program::op_code::state_latch;
        op.param = latch_position[g.id];
        /* the captured input is not an operand of the stored value */
        prog.args.resize( op.arg_begin );
      }
      else if ( auto const* c = std::get_if<const_gate>( &g.kind ) )
      {
        op.code = program::op_code::constant;
        op.param = c->value;
      }
      else if ( std::holds_alternative<input_port>( g.kind ) )
      {
        op.code = program::op_code::input;
        op.param = input_index[g.id];
      }
    }
    op.arg_end = static_cast<uint32_t>( prog.args.size() );
    prog.ops.push_back( op );
  }
  return prog;
}

} // namespace mvtlg
