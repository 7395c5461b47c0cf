/*!
  \file batch.hpp
  \brief Evaluates a combinational netlist on many input vectors at once

  Each net becomes a column of signed-byte lanes, one lane per input
  vector, processed in blocks with the kernels from `simd/kernels.hpp`.
  Storage cells are read but never updated. Lanes that hit a floating or
  contended net in the output cone are flagged; use `simulator` on those
  vectors for the fault details.
*/

#pragma once

#include <mvtlg/netlist.hpp>
#include <mvtlg/program.hpp>
#include <mvtlg/simd/kernels.hpp>

#include <optional>
#include <span>
#include <vector>

namespace mvtlg
{

class batch_evaluator
{
public:
  static constexpr std::size_t block_lanes = 256;

  explicit batch_evaluator( netlist const& nl, simd::kernel_table const& kernels = simd::active_kernels() );

  /*! \brief Whether every level of `nl` fits a signed byte lane. */
  static bool supports( netlist const& nl );

  struct result
  {
    std::size_t lanes{ 0 };
    /* output-major: outputs[o * lanes + l] */
    std::vector<int8_t> outputs;
    std::vector<uint8_t> faulty;

    int output( std::size_t o, std::size_t lane ) const { return outputs[o * lanes + lane]; }
  };

  /*! \brief `inputs` is input-major: inputs[j * lanes + l]. */
  result evaluate( std::span<int8_t const> inputs, std::size_t lanes, std::span<uint8_t const> config,
                   std::span<std::optional<int> const> cells = {} ) const;

  /*! \brief Lanes are the table indices first .. first+count-1, digits most-significant first.

    All inputs must share one radix.
  */
  result evaluate_indices( uint64_t first, std::size_t count, std::span<uint8_t const> config,
                           std::span<std::optional<int> const> cells = {} ) const;

  simd::kernel_table const& kernels() const noexcept { return *kernels_; }
  program const& compiled() const noexcept { return prog_; }

private:
  program prog_;
  simd::kernel_table const* kernels_;
};

} // namespace mvtlg
