#if !defined( __AVX2__ )
#error kernels_avx2.cpp must be compiled with -mavx2
#endif

#include <mvtlg/simd/kernels.hpp>

#include <immintrin.h>

namespace mvtlg::simd
{

namespace
{

constexpr std::size_t width = 32;

inline __m256i load( int8_t const* p )
{
  return _mm256_loadu_si256( reinterpret_cast<__m256i const*>( p ) );
}

inline void store( int8_t* p, __m256i v )
{
  _mm256_storeu_si256( reinterpret_cast<__m256i*>( p ), v );
}

/* lanes < 0 keep `a`, others take `r` */
inline __m256i keep_negative( __m256i a, __m256i r )
{
  auto const neg = _mm256_cmpgt_epi8( _mm256_setzero_si256(), a );
  return _mm256_blendv_epi8( r, a, neg );
}

void and2( int8_t const* a, int8_t const* b, int8_t* out, std::size_t n )
{
  std::size_t i = 0;
  for ( ; i + width <= n; i += width )
    store( out + i, _mm256_min_epi8( load( a + i ), load( b + i ) ) );
  scalar_kernels().and2( a + i, b + i, out + i, n - i );
}

void or2( int8_t const* a, int8_t const* b, int8_t* out, std::size_t n )
{
  std::size_t i = 0;
  for ( ; i + width <= n; i += width )
  {
    auto const va = load( a + i );
    auto const vb = load( b + i );
    auto const lo = _mm256_min_epi8( va, vb );
    store( out + i, keep_negative( lo, _mm256_max_epi8( va, vb ) ) );
  }
  scalar_kernels().or2( a + i, b + i, out + i, n - i );
}

void not1( int8_t const* a, int8_t* out, std::size_t n )
{
  auto const one = _mm256_set1_epi8( 1 );
  std::size_t i = 0;
  for ( ; i + width <= n; i += width )
  {
    auto const va = load( a + i );
    store( out + i, keep_negative( va, _mm256_sub_epi8( one, va ) ) );
  }
  scalar_kernels().not1( a + i, out + i, n - i );
}

void threshold( int8_t const* a, int8_t t, int8_t* out, std::size_t n )
{
  auto const vt = _mm256_set1_epi8( t );
  auto const one = _mm256_set1_epi8( 1 );
  std::size_t i = 0;
  for ( ; i + width <= n; i += width )
  {
    auto const va = load( a + i );
    auto const gt = _mm256_and_si256( _mm256_cmpgt_epi8( va, vt ), one );
    store( out + i, keep_negative( va, gt ) );
  }
  scalar_kernels().threshold( a + i, t, out + i, n - i );
}

void invert( int8_t const* a, int8_t top, int8_t* out, std::size_t n )
{
  auto const vtop = _mm256_set1_epi8( top );
  std::size_t i = 0;
  for ( ; i + width <= n; i += width )
  {
    auto const va = load( a + i );
    store( out + i, keep_negative( va, _mm256_sub_epi8( vtop, va ) ) );
  }
  scalar_kernels().invert( a + i, top, out + i, n - i );
}

void switch_accumulate( int8_t const* data, int8_t const* control, int8_t* value, int8_t* count, int8_t* poison, std::size_t n )
{
  auto const zero = _mm256_setzero_si256();
  auto const one = _mm256_set1_epi8( 1 );
  auto const two = _mm256_set1_epi8( 2 );
  std::size_t i = 0;
  for ( ; i + width <= n; i += width )
  {
    auto const c = load( control + i );
    auto const d = load( data + i );
    auto const on = _mm256_cmpeq_epi8( c, one );
    auto p = load( poison + i );

    p = _mm256_min_epi8( p, _mm256_min_epi8( c, zero ) );
    p = _mm256_min_epi8( p, _mm256_and_si256( on, _mm256_min_epi8( d, zero ) ) );
    auto const cnt = load( count + i );
    store( count + i, _mm256_blendv_epi8( cnt, _mm256_min_epi8( _mm256_add_epi8( cnt, one ), two ), on ) );
    store( value + i, _mm256_blendv_epi8( load( value + i ), d, on ) );
    store( poison + i, p );
  }
  scalar_kernels().switch_accumulate( data + i, control + i, value + i, count + i, poison + i, n - i );
}

void switch_resolve( int8_t const* value, int8_t const* count, int8_t const* poison, int8_t* out, uint8_t* fault, std::size_t n )
{
  auto const zero = _mm256_setzero_si256();
  auto const one = _mm256_set1_epi8( 1 );
  std::size_t i = 0;
  for ( ; i + width <= n; i += width )
  {
    auto const cnt = load( count + i );
    auto const p = load( poison + i );
    auto const none = _mm256_cmpeq_epi8( cnt, zero );
    auto const many = _mm256_cmpgt_epi8( cnt, one );
    auto const poisoned = _mm256_cmpgt_epi8( zero, p );

    auto r = load( value + i );
    r = _mm256_blendv_epi8( r, _mm256_set1_epi8( -2 ), many );
    r = _mm256_blendv_epi8( r, _mm256_set1_epi8( -1 ), none );
    r = _mm256_blendv_epi8( r, p, poisoned );
    store( out + i, r );

    auto const created = _mm256_andnot_si256( poisoned, _mm256_or_si256( none, many ) );
    auto const f = _mm256_or_si256( _mm256_loadu_si256( reinterpret_cast<__m256i const*>( fault + i ) ), _mm256_and_si256( created, one ) );
    _mm256_storeu_si256( reinterpret_cast<__m256i*>( fault + i ), f );
  }
  scalar_kernels().switch_resolve( value + i, count + i, poison + i, out + i, fault + i, n - i );
}

} // namespace

kernel_table const& avx2_kernels()
{
  static constexpr kernel_table table{ "avx2", and2, or2, not1, threshold, invert, switch_accumulate, switch_resolve };
  return table;
}

} // namespace mvtlg::simd
