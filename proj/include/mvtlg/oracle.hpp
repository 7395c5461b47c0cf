/*!
  \file oracle.hpp
  \brief Brute-force references and simulation-based equivalence checking

  Nothing here looks at how a netlist was built: expected values come from
  table lookup or arithmetic, observed values from simulation.
*/

#pragma once

#include <mvtlg/netlist.hpp>
#include <mvtlg/types.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mvtlg
{

/*! \brief Table lookup at the positional index of `inputs` (most-significant first). */
int oracle_eval( truth_table const& tt, std::span<int const> inputs );
mv_value oracle_eval( truth_table const& tt, std::span<mv_value const> inputs );

/*! \brief sum = (x1 + x0) mod N, carry = (x1 + x0 >= N). */
std::pair<truth_table, truth_table> reference_half_adder( radix r );

struct mismatch
{
  /* table index for combinational checks, step number for sequences */
  uint64_t index;
  std::vector<int> inputs;
  std::vector<int> expected;
  std::vector<int> got;
  /* fault description when the simulator faulted instead */
  std::string fault;

  friend bool operator==( mismatch const&, mismatch const& ) = default;
};

struct equivalence_report
{
  uint64_t total_vectors{ 0 };
  uint64_t space_size{ 0 };
  bool exhaustive{ true };
  uint64_t seed{ 0 };
  uint64_t mismatch_count{ 0 };
  /* the first `max_mismatches` of them, sorted by index */
  std::vector<mismatch> mismatches;

  bool passed() const noexcept { return mismatch_count == 0; }
  double coverage() const noexcept { return space_size ? static_cast<double>( total_vectors ) / static_cast<double>( space_size ) : 0.0; }
};

struct equivalence_options
{
  /* exhaustive when N^M <= cap, otherwise `cap` random vectors */
  uint64_t exhaustive_cap{ 6561 };
  uint64_t seed{ 0x6d76746c67ULL };
  /* keep at most this many mismatches in the report (the count is still exact) */
  std::size_t max_mismatches{ 64 };
  bool use_batch{ true };
};

/*! \brief Compares each netlist output j against `tables[j]`.

  `config` must be given iff the netlist has configuration latches.
  Mismatches are sorted by input index.
*/
equivalence_report check_equivalence( netlist const& nl, std::span<truth_table const> tables,
                                      std::optional<config_bitstream> const& config = std::nullopt,
                                      equivalence_options const& options = {} );

equivalence_report check_equivalence( netlist const& nl, truth_table const& tt,
                                      std::optional<config_bitstream> const& config = std::nullopt,
                                      equivalence_options const& options = {} );

/*! \brief Software iteration of a state machine: next state (most-significant first). */
std::vector<int> fsm_next_state( fsm_spec const& spec, std::span<int const> state, std::span<int const> input );

/*! \brief Output table values for a state and input. */
std::vector<int> fsm_outputs( fsm_spec const& spec, std::span<int const> state, std::span<int const> input );

/*! \brief Steps the compiled machine along each sequence from `reset` and compares
    every post-edge output vector (state digits, then outputs) with software iteration. */
equivalence_report check_fsm_equivalence( netlist const& nl, fsm_spec const& spec, std::span<int const> reset,
                                          std::span<std::vector<std::vector<int>> const> input_sequences );

/*! \brief Every input sequence of the given length (inputs per step = `input_arity`). */
std::vector<std::vector<std::vector<int>>> all_sequences( radix r, int input_arity, int length );

enum class flip_outcome
{
  /* verification of the mutated bitstream fails */
  detected,
  /* verification passes exhaustively: the mutated fabric behaves identically */
  behavior_identical
};

struct flip_classification
{
  std::size_t bit;
  flip_outcome outcome;
  std::size_t mismatching_vectors;
};

/*! \brief Flips each configuration bit of `config` in turn and classifies the result.

  Throws if a flip neither fails verification nor is shown to leave the
  behavior identical on every input.
*/
std::vector<flip_classification> classify_bit_flips( netlist const& fabric, truth_table const& tt, config_bitstream const& config );

} // namespace mvtlg
