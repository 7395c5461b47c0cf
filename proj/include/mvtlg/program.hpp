/*!
  \file program.hpp
  \brief Levelized evaluation program compiled from a netlist

  One op per net, in topological order. Switch-driven nets become a single
  `resolve` op over their (data, control) pairs. Values are small signed
  integers: levels are >= 0, and the negative codes below mark nets that
  carry no valid level. Every op propagates the most negative code of its
  operands.
*/

#pragma once

#include <mvtlg/netlist.hpp>

#include <cstdint>
#include <vector>

namespace mvtlg
{

namespace level_code
{
constexpr int floating = -1;
constexpr int contention = -2;
constexpr int uninitialized = -3;
} // namespace level_code

struct program
{
  enum class op_code : uint8_t
  {
    input,
    constant,
    config_latch,
    state_latch,
    threshold,
    and_,
    or_,
    not_,
    invert,
    resolve
  };

  struct op
  {
    op_code code;
    net_id out;
    /* input index, constant level, latch position, threshold or N-1 */
    int param;
    /* operands in `args`; resolve ops store (data, control) pairs */
    uint32_t arg_begin;
    uint32_t arg_end;
    /* structurally reaches an output port or a storage cell input */
    bool in_cone;
  };

  std::vector<op> ops;
  std::vector<net_id> args;
  std::size_t num_nets{ 0 };
  std::vector<net_id> input_nets;
  std::vector<signal_kind> input_kinds;
  std::vector<net_id> output_nets;
  /* per state latch position: the net it captures, and its register */
  std::vector<net_id> state_latch_inputs;
  std::vector<int> state_latch_regs;
  std::size_t num_config_latches{ 0 };
  std::size_t num_registers{ 0 };
  /* largest radix on any net */
  int max_levels{ 2 };
};

/*! \brief Compiles a validated netlist. Throws on combinational cycles. */
program compile_program( netlist const& nl );

} // namespace mvtlg
