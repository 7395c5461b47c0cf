/*!
  \file kernels.hpp
  \brief Lane-parallel gate kernels used by the batch evaluator

  Each lane holds one signed byte: a level >= 0 or a negative code (see
  `level_code`). Kernels operate on `n` consecutive lanes; buffers may
  alias only where noted. The scalar table is the reference; other tables
  must agree with it bit for bit on every lane.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mvtlg::simd
{

struct kernel_table
{
  char const* name;

  /* out = a & b for levels in {0,1}; min code otherwise. out may alias a. */
  void ( *and2 )( int8_t const* a, int8_t const* b, int8_t* out, std::size_t n );
  /* out = a | b; min code if either is negative. out may alias a. */
  void ( *or2 )( int8_t const* a, int8_t const* b, int8_t* out, std::size_t n );
  void ( *not1 )( int8_t const* a, int8_t* out, std::size_t n );
  /* out = a > t */
  void ( *threshold )( int8_t const* a, int8_t t, int8_t* out, std::size_t n );
  /* out = top - a */
  void ( *invert )( int8_t const* a, int8_t top, int8_t* out, std::size_t n );

  /* Switch resolution. Start with value = 0, count = 0, poison = 0, then
     accumulate every (data, control) driver; count saturates at 2. */
  void ( *switch_accumulate )( int8_t const* data, int8_t const* control, int8_t* value, int8_t* count, int8_t* poison, std::size_t n );
  /* out = poison if negative, else floating (count 0), contention (count 2)
     or value. fault[l] |= 1 when floating or contention is created here. */
  void ( *switch_resolve )( int8_t const* value, int8_t const* count, int8_t const* poison, int8_t* out, uint8_t* fault, std::size_t n );
};

enum class isa
{
  scalar,
  avx2
};

std::string_view to_string( isa i );

kernel_table const& scalar_kernels();

/*! \brief Kernel table for `i`; nullptr when not compiled in or not supported by this CPU. */
kernel_table const* kernels_for( isa i );

/*! \brief Best supported table; `MVTLG_SIMD=scalar` in the environment forces the reference. */
kernel_table const& active_kernels();

bool cpu_supports( isa i );

} // namespace mvtlg::simd
