/*!
  \file netlist.hpp
  \brief Gate-level netlist of threshold gates, binary gates, switches and latches

  Every gate drives at most one net. Nets are typed: binary, or radix-N
  ("nary"). A net has exactly one driver, except nets driven by switches,
  which may have any number of switch drivers (and nothing else); at most
  one of them may conduct at a time, which the simulator checks.

  Latch outputs are sources for levelization, so the netlist restricted to
  non-latch gates must be acyclic.
*/

#pragma once

#include <mvtlg/types.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mvtlg
{

using net_id = uint32_t;
using gate_id = uint32_t;

/*! \brief Signal type of a net or port: binary, or radix-N with its radix. */
struct signal_kind
{
  bool nary{ false };
  int levels{ 2 };

  static signal_kind binary() { return { false, 2 }; }
  static signal_kind of( radix r ) { return { true, r.n() }; }

  int max_level() const noexcept { return levels - 1; }

  friend bool operator==( signal_kind, signal_kind ) = default;
};

std::string to_string( signal_kind k );

/* gate kinds */

/*! \brief Comparator: binary 1 iff the radix-N input exceeds `threshold`. */
struct tlg_gate
{
  int threshold;
  friend bool operator==( tlg_gate const&, tlg_gate const& ) = default;
};
struct and_gate
{
  int fan_in;
  friend bool operator==( and_gate const&, and_gate const& ) = default;
};
struct or_gate
{
  int fan_in;
  friend bool operator==( or_gate const&, or_gate const& ) = default;
};
struct not_gate
{
  friend bool operator==( not_gate const&, not_gate const& ) = default;
};
/*! \brief Inputs (data, control). Passes data while control = 1, else drives nothing. */
struct switch_gate
{
  friend bool operator==( switch_gate const&, switch_gate const& ) = default;
};
struct nary_inverter
{
  int levels;
  friend bool operator==( nary_inverter const&, nary_inverter const& ) = default;
};
/*! \brief Binary storage for one configuration bit; loaded out of band. */
struct config_latch
{
  friend bool operator==( config_latch const&, config_latch const& ) = default;
};
/*! \brief Radix-N storage cell.

  Its output is the stored value; after each settle it captures its input.
  Cells sharing `reg` belong to one register and are reset together.
*/
struct nary_dlatch
{
  int levels;
  int reg;
  friend bool operator==( nary_dlatch const&, nary_dlatch const& ) = default;
};
struct const_gate
{
  int value;
  signal_kind kind;
  friend bool operator==( const_gate const&, const_gate const& ) = default;
};
struct input_port
{
  std::string name;
  signal_kind kind;
  friend bool operator==( input_port const&, input_port const& ) = default;
};
struct output_port
{
  std::string name;
  signal_kind kind;
  friend bool operator==( output_port const&, output_port const& ) = default;
};

using gate_kind = std::variant<tlg_gate, and_gate, or_gate, not_gate, switch_gate, nary_inverter,
                               config_latch, nary_dlatch, const_gate, input_port, output_port>;

/*! \brief Short lowercase name of a gate kind ("tlg", "and", "switch", ...). */
std::string_view kind_name( gate_kind const& kind );

struct net
{
  net_id id;
  signal_kind kind;
  std::string name;

  friend bool operator==( net const&, net const& ) = default;
};

struct gate
{
  gate_id id;
  gate_kind kind;
  std::vector<net_id> inputs;
  std::optional<net_id> output;

  friend bool operator==( gate const&, gate const& ) = default;
};

/*! \brief A recorded sub-block instantiation (type and hierarchical path). */
struct instance
{
  std::string type;
  std::string path;

  friend bool operator==( instance const&, instance const& ) = default;
};

enum class fabric_kind
{
  decoder,
  mux_tree,
  mux_flat
};

std::string_view to_string( fabric_kind k );
fabric_kind parse_fabric_kind( std::string_view s );

/*! \brief Dimensions of a reconfigurable fabric, used to check bitstreams. */
struct fabric_info
{
  fabric_kind kind;
  int levels;
  int arity;

  friend bool operator==( fabric_info const&, fabric_info const& ) = default;
};

/*! \brief Immutable validated netlist. Construct with `netlist_builder`. */
class netlist
{
public:
  std::string const& type_name() const noexcept { return type_name_; }
  std::vector<net> const& nets() const noexcept { return nets_; }
  std::vector<gate> const& gates() const noexcept { return gates_; }
  net const& net_at( net_id id ) const { return nets_.at( id ); }
  gate const& gate_at( gate_id id ) const { return gates_.at( id ); }

  /*! \brief Input / output port gate ids in port order. */
  std::vector<gate_id> const& inputs() const noexcept { return inputs_; }
  std::vector<gate_id> const& outputs() const noexcept { return outputs_; }

  /*! \brief Configuration latches in bitstream order. */
  std::vector<gate_id> const& latch_order() const noexcept { return latch_order_; }
  /*! \brief Radix-N storage cells, in creation order. */
  std::vector<gate_id> const& state_latches() const noexcept { return state_latches_; }
  std::vector<instance> const& instances() const noexcept { return instances_; }

  /*! \brief Index into `inputs()` of the clock port of a sequential netlist. */
  std::optional<std::size_t> clock_input() const noexcept { return clock_input_; }
  std::optional<fabric_info> const& fabric() const noexcept { return fabric_; }

  std::size_t num_registers() const noexcept;
  bool is_sequential() const noexcept { return !state_latches_.empty(); }

  std::string const& port_name( gate_id port ) const;
  signal_kind port_kind( gate_id port ) const;
  /*! \brief Net attached to an input port (its output) or output port (its input). */
  net_id port_net( gate_id port ) const;

  /*! \brief Gates driving each net, indexed by net id. */
  std::vector<std::vector<gate_id>> drivers() const;

  friend bool operator==( netlist const&, netlist const& ) = default;

private:
  friend class netlist_builder;
  netlist() = default;

  std::string type_name_;
  std::vector<net> nets_;
  std::vector<gate> gates_;
  std::vector<gate_id> inputs_;
  std::vector<gate_id> outputs_;
  std::vector<gate_id> latch_order_;
  std::vector<gate_id> state_latches_;
  std::vector<instance> instances_;
  std::optional<std::size_t> clock_input_;
  std::optional<fabric_info> fabric_;
};

/*! \brief Throws `error` describing the first structural violation.

  Checks port arities, signal kinds (binary vs radix-N, matching radices),
  single drivers for non-switch nets, undriven nets, latch bookkeeping and
  combinational cycles.
*/
void validate( netlist const& nl );

/*! \brief Nets in an order where every net follows the nets its drivers read.

  Latch outputs count as sources. Throws on a combinational cycle.
*/
std::vector<net_id> levelize( netlist const& nl );

/*! \brief Incremental netlist construction; `build()` validates. */
class netlist_builder
{
public:
  explicit netlist_builder( std::string type_name = {} );

  net_id add_net( signal_kind kind, std::string name = {} );
  gate_id add_gate( gate_kind kind, std::vector<net_id> inputs, std::optional<net_id> output );

  net_id input( std::string name, signal_kind kind );
  void output( std::string name, net_id n );

  /*! \brief Shared constant driver, one per (value, kind). */
  net_id constant( int value, signal_kind kind );

  net_id tlg( net_id x, int threshold, std::string name = {} );
  net_id and_( std::vector<net_id> ins, std::string name = {} );
  net_id or_( std::vector<net_id> ins, std::string name = {} );
  net_id not_( net_id a, std::string name = {} );
  net_id invert( net_id a, std::string name = {} );
  net_id config_latch( std::string name = {} );
  /*! \brief Storage cell capturing `d`; returns the stored-value net. */
  net_id state_latch( net_id d, int reg, std::string name = {} );
  /*! \brief Adds a switch from `data` under `control` onto the existing net `out`. */
  void switch_onto( net_id out, net_id data, net_id control );

  /*! \brief Copies `sub` into this netlist.

    Input ports of `sub` are bound to `inputs` (in port order); returns the
    nets carrying its outputs. Constants are merged, latches appended to
    latch order and state latches, registers shifted by `reg_base`.
  */
  std::vector<net_id> instantiate( netlist const& sub, std::span<net_id const> inputs, std::string const& path, int reg_base = 0 );

  void record_instance( std::string type, std::string path );
  void set_clock( net_id clock_net );
  void set_clock_input( std::size_t input_index );
  /*! \brief Replaces the creation-order bookkeeping lists (used when reading files). */
  void set_order( std::vector<gate_id> inputs, std::vector<gate_id> outputs,
                  std::vector<gate_id> latch_order, std::vector<gate_id> state_latches );
  void set_fabric( fabric_info info );

  signal_kind kind_of( net_id n ) const { return nl_.nets_.at( n ).kind; }
  std::size_t num_gates() const noexcept { return nl_.gates_.size(); }

  netlist build() &&;

private:
  netlist nl_;
  std::map<std::pair<int, std::pair<bool, int>>, net_id> constants_;
};

/*! \brief Number of gates of each kind, plus instance counts by type. */
struct gate_stats
{
  std::map<std::string, std::size_t, std::less<>> per_kind;
  std::map<std::string, std::size_t, std::less<>> per_instance;

  std::size_t tlg_count{ 0 };
  std::size_t and_count{ 0 };
  std::size_t or_count{ 0 };
  std::size_t not_count{ 0 };
  std::size_t switch_count{ 0 };
  std::size_t config_latch_count{ 0 };
  std::size_t state_latch_count{ 0 };
  std::size_t latch_count{ 0 };

  std::size_t kind( std::string_view name ) const;
  std::size_t instances_of( std::string_view type ) const;
};

gate_stats compute_gate_stats( netlist const& nl );

} // namespace mvtlg
