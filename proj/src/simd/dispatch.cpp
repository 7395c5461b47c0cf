#include <mvtlg/simd/kernels.hpp>

#include <cstdlib>
#include <string_view>

namespace mvtlg::simd
{

#if defined( MVTLG_HAVE_AVX2 )
kernel_table const& avx2_kernels();
#endif

std::string_view to_string( isa i )
{
  switch ( i )
  {
  case isa::scalar:
    return "scalar";
  case isa::avx2:
    return "avx2";
  }
  return "?";
}

bool cpu_supports( isa i )
{
  switch ( i )
  {
  case isa::scalar:
    return true;
  case isa::avx2:
#if defined( MVTLG_HAVE_AVX2 ) && ( defined( __GNUC__ ) || defined( __clang__ ) )
    return __builtin_cpu_supports( "avx2" );
#else
    return false;
#endif
  }
  return false;
}

kernel_table const* kernels_for( isa i )
{
  if ( !cpu_supports( i ) )
    return nullptr;
  switch ( i )
  {
  case isa::scalar:
    return &scalar_kernels();
  case isa::avx2:
#if defined( MVTLG_HAVE_AVX2 )
    return &avx2_kernels();
#else
    return nullptr;
#endif
  }
  return nullptr;
}

kernel_table const& active_kernels()
{
  static kernel_table const& selected = []() -> kernel_table const& {
    if ( auto const* forced = std::getenv( "MVTLG_SIMD" ); forced && std::string_view( forced ) == "scalar" )
      return scalar_kernels();
    if ( auto const* t = kernels_for( isa::avx2 ) )
      return *t;
    return scalar_kernels();
  }();
  return selected;
}

} // namespace mvtlg::simd
