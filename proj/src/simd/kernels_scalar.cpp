#include <mvtlg/simd/kernels.hpp>

#include <algorithm>

namespace mvtlg::simd
{

namespace
{

constexpr int8_t floating = -1;
constexpr int8_t contention = -2;

void and2( int8_t const* a, int8_t const* b, int8_t* out, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
    out[i] = std::min( a[i], b[i] );
}

void or2( int8_t const* a, int8_t const* b, int8_t* out, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
  {
    auto const lo = std::min( a[i], b[i] );
    out[i] = lo < 0 ? lo : std::max( a[i], b[i] );
  }
}

void not1( int8_t const* a, int8_t* out, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
    out[i] = a[i] < 0 ? a[i] : static_cast<int8_t>( 1 - a[i] );
}

void threshold( int8_t const* a, int8_t t, int8_t* out, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
    out[i] = a[i] < 0 ? a[i] : static_cast<int8_t>( a[i] > t );
}

void invert( int8_t const* a, int8_t top, int8_t* out, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
    out[i] = a[i] < 0 ? a[i] : static_cast<int8_t>( top - a[i] );
}

void switch_accumulate( int8_t const* data, int8_t const* control, int8_t* value, int8_t* count, int8_t* poison, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( control[i] < 0 )
    {
      poison[i] = std::min( poison[i], control[i] );
    }
    else if ( control[i] == 1 )
    {
      count[i] = std::min<int8_t>( count[i] + 1, 2 );
      value[i] = data[i];
      poison[i] = std::min( poison[i], std::min<int8_t>( data[i], 0 ) );
    }
  }
}

void switch_resolve( int8_t const* value, int8_t const* count, int8_t const* poison, int8_t* out, uint8_t* fault, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( poison[i] < 0 )
    {
      out[i] = poison[i];
    }
    else if ( count[i] == 1 )
    {
      out[i] = value[i];
    }
    else
    {
      out[i] = count[i] == 0 ? floating : contention;
      fault[i] |= 1;
    }
  }
}

} // namespace

kernel_table const& scalar_kernels()
{
  static constexpr kernel_table table{ "scalar", and2, or2, not1, threshold, invert, switch_accumulate, switch_resolve };
  return table;
}

} // namespace mvtlg::simd
