/*!
  \file synth.hpp
  \brief Decoder, multiplexer, function, fabric, latch and state-machine constructions

  Port conventions (all most-significant first):

  - one-to-N decoder: input `x`; outputs `b0..b{N-1}` in index order
  - M-to-N^M decoder: inputs `x{M-1}..x0`; outputs `b0..b{N^M-1}`
  - multiplexers: data `i{K-1}..i0`, then selects `s{M-1}..s0`; output `y`
  - functions and fabrics: inputs `x{M-1}..x0`; output `y` (or the table names)
  - D-latch / flip-flop: inputs `d`, `g`; output `q`
  - state machines: inputs `i{..}` then `clk`; outputs `q{..}` then `y{..}`

  Every construction produces a single-radix circuit.
*/

#pragma once

#include <mvtlg/netlist.hpp>
#include <mvtlg/types.hpp>

#include <span>
#include <vector>

namespace mvtlg
{

/*! \brief How a function is realized. */
struct synth_strategy
{
  enum class style
  {
    decoder_based,
    mux_based
  };

  style kind{ style::decoder_based };
  /*! \brief Mux-based only: tree of N-to-one muxes, or a flat decoder plus N^M switches. */
  bool tree{ true };
  /*! \brief Decoder-based only: one shared decoder for all outputs of a multi-output call. */
  bool share_decoder{ true };

  static synth_strategy decoder() { return { style::decoder_based, true, true }; }
  static synth_strategy mux( bool tree = true ) { return { style::mux_based, tree, true }; }
};

/*! \brief Parses "decoder", "mux" (tree) or "mux-flat". */
synth_strategy parse_strategy( std::string_view s );

/*! \brief One radix-N input to N one-hot binary outputs via N-1 threshold gates. */
netlist build_decoder_1( radix r );

/*! \brief M radix-N inputs to N^M one-hot binary outputs. */
netlist build_decoder_m( radix r, int m );

/*! \brief N-to-one multiplexer: a one-to-N decoder on the select gating N switches. */
netlist build_mux_1( radix r );

/*! \brief N^M-to-one multiplexer.

  In tree mode the first stage selects with s0 among consecutive groups of N
  data inputs; the last stage selects with s{M-1}. Tree mode uses
  (N^M - 1)/(N - 1) N-to-one muxes, flat mode one M-to-N^M decoder and N^M
  switches.
*/
netlist build_mux_m( radix r, int m, bool tree );

/*! \brief Decoder-based realization: OR groups of decoder outputs select constant levels. */
netlist synth_decoder_based( truth_table const& tt );

/*! \brief Multiplexer-based realization: table entries tied to the data inputs. */
netlist synth_mux_based( truth_table const& tt, bool tree );

/*! \brief Realizes one or more tables over the same inputs as one netlist.

  All tables must share radix and arity; output ports take the table names
  (or `y0`, `y1`, ... for unnamed tables; `y` for a single unnamed table).
*/
netlist synthesize( std::span<truth_table const> tables, synth_strategy strategy );
netlist synthesize( truth_table const& tt, synth_strategy strategy );

/*! \brief Reconfigurable decoder-based fabric with N*N^M configuration latches. */
netlist build_fabric_decoder( radix r, int m );

/*! \brief Reconfigurable mux-based fabric: a selection block of N latches per data input. */
netlist build_fabric_mux( radix r, int m, bool tree );

netlist build_fabric( fabric_kind kind, radix r, int m );

/*! \brief Configuration bits realizing `tt` on a fabric of the given kind.

  Decoder fabric: bit [k * N^M + n] = (tt[n] == k).
  Mux fabric: bit [k * N + n] = (tt[k] == n).
*/
config_bitstream derive_config( truth_table const& tt, fabric_kind kind );

/*! \brief As above, after checking `tt` against the fabric's dimensions. */
config_bitstream derive_config( truth_table const& tt, netlist const& fabric );

/*! \brief Radix-N D-latch: transparent while g != 0, holding while g = 0. */
netlist build_nary_dlatch( radix r );

/*! \brief Master-slave flip-flop capturing d on the g transition 0 -> nonzero. */
netlist build_nary_dff( radix r );

/*! \brief Next-state logic per state digit feeding one flip-flop each, clocked by `clk`. */
netlist compile_fsm( fsm_spec const& spec, synth_strategy strategy );

} // namespace mvtlg
