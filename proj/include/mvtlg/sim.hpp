/*!
  \file sim.hpp
  \brief Levelized netlist simulation with strict fault detection

  Combinational evaluation settles every net once in topological order,
  then each storage cell captures its input net (level-sensitive latches).
  A switch-driven net with no conducting switch, or with more than one, is
  a fault whenever that net structurally reaches an output or storage cell;
  faults are raised as `fault_error`, never resolved to a default level.

  Configuration latches power up at 0. Storage cells start uninitialized
  and must be reset explicitly before any evaluation.
*/

#pragma once

#include <mvtlg/netlist.hpp>
#include <mvtlg/program.hpp>
#include <mvtlg/types.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mvtlg
{

enum class fault_kind
{
  floating_net,
  contention,
  uninitialized_latch
};

std::string_view to_string( fault_kind k );

struct fault
{
  fault_kind kind;
  /* net for floating / contention, storage cell gate for uninitialized */
  uint32_t where;
  std::vector<int> inputs;

  std::string describe( netlist const& nl ) const;

  friend bool operator==( fault const&, fault const& ) = default;
};

class fault_error : public error
{
public:
  fault_error( fault f, std::string const& what ) : error( what ), fault_( std::move( f ) ) {}

  fault const& get() const noexcept { return fault_; }

private:
  fault fault_;
};

struct sim_state
{
  /* configuration latch contents, in latch order */
  std::vector<uint8_t> config;
  /* storage cell contents, in state latch order */
  std::vector<std::optional<int>> cells;
  /* net values of the last settle; empty when invalidated */
  std::vector<int> net_values;
  std::vector<fault> fault_log;
};

/*! \brief Simulator bound to one netlist; holds the compiled program only. */
class simulator
{
public:
  explicit simulator( netlist const& nl );

  sim_state initial_state() const;

  /*! \brief Settles all nets for `inputs` (port order, clock included) and updates storage cells. */
  std::vector<int> eval( std::span<int const> inputs, sim_state& state ) const;

  /*! \brief One clock cycle: settle with clock 0, then with clock 1. Inputs exclude the clock. */
  std::vector<int> step( std::span<int const> inputs, sim_state& state ) const;

  void load_config( config_bitstream const& bits, sim_state& state ) const;

  /*! \brief Sets every storage cell of register r to `values[r]`. */
  void reset( std::span<int const> values, sim_state& state ) const;

  program const& compiled() const noexcept { return prog_; }
  netlist const& circuit() const noexcept { return *nl_; }

private:
  void check_inputs( std::span<int const> inputs ) const;
  [[noreturn]] void raise( fault f, sim_state& state ) const;

  netlist const* nl_;
  program prog_;
};

/* stateless entry points; each call compiles the netlist */

sim_state make_sim_state( netlist const& nl );
std::vector<mv_value> eval_combinational( netlist const& nl, std::span<mv_value const> inputs, sim_state& state );
void load_config( netlist const& nl, config_bitstream const& bits, sim_state& state );
std::vector<mv_value> step_sequential( netlist const& nl, std::span<mv_value const> inputs, sim_state& state );
void reset_state( netlist const& nl, std::span<int const> register_values, sim_state& state );

} // namespace mvtlg
