#include <doctest.h>

#include "support.hpp"

#include <mvtlg/types.hpp>

using namespace mvtlg;

TEST_CASE( "radix and level ranges" )
{
  CHECK_THROWS_AS( radix( 1 ), error );
  CHECK_THROWS_AS( radix( 0 ), error );
  CHECK( radix( 2 ).max_level() == 1 );
  CHECK_THROWS_AS( mv_value( 3, radix( 3 ) ), error );
  CHECK_THROWS_AS( mv_value( -1, radix( 3 ) ), error );
  CHECK( mv_value( 2, radix( 3 ) ).value() == 2 );
}

TEST_CASE( "nary inversion" )
{
  CHECK( nary_invert( mv_value( 0, radix( 3 ) ) ).value() == 2 );
  CHECK( nary_invert( mv_value( 1, radix( 3 ) ) ).value() == 1 );
  CHECK( nary_invert( mv_value( 1, radix( 4 ) ) ).value() == 2 );

  // matches reversing the list of levels
  for ( int n = 2; n <= 6; ++n )
  {
    std::vector<int> levels( n );
    for ( int v = 0; v < n; ++v )
      levels[v] = v;
    std::vector<int> reversed( levels.rbegin(), levels.rend() );
    for ( int v = 0; v < n; ++v )
    {
      mv_value x( v, radix( n ) );
      CHECK( nary_invert( x ).value() == reversed[v] );
      CHECK( nary_invert( nary_invert( x ) ) == x );
      CHECK( nary_invert( x ).base() == radix( n ) );
    }
  }
}

TEST_CASE( "positional index" )
{
  auto const r3 = radix( 3 );
  std::vector<mv_value> a{ mv_value( 1, r3 ), mv_value( 2, r3 ) };
  CHECK( tt_index( a, r3 ) == 5 );
  std::vector<mv_value> z{ mv_value( 0, r3 ), mv_value( 0, r3 ) };
  CHECK( tt_index( z, r3 ) == 0 );

  auto const r2 = radix( 2 );
  std::vector<mv_value> b{ mv_value( 1, r2 ), mv_value( 0, r2 ), mv_value( 1, r2 ) };
  CHECK( tt_index( b, r2 ) == 0b101 );

  std::vector<mv_value> mixed{ mv_value( 1, r3 ), mv_value( 1, r2 ) };
  CHECK_THROWS_AS( tt_index( mixed, r3 ), error );
  CHECK_THROWS_AS( tt_index( std::span<mv_value const>{}, r3 ), error );
}

TEST_CASE( "positional index is a bijection with digit decomposition" )
{
  for ( int n = 2; n <= 5; ++n )
  {
    for ( int m = 1; m <= 4; ++m )
    {
      auto const size = test::power( n, m );
      CHECK( table_size( radix( n ), m ) == size );
      std::vector<bool> seen( size, false );
      for ( uint64_t k = 0; k < size; ++k )
      {
        auto const d = index_digits( k, radix( n ), m );
        CHECK( d == test::digits( k, n, m ) );
        auto const back = tt_index( std::span<int const>( d ), radix( n ) );
        REQUIRE( back < size );
        CHECK( back == k );
        CHECK( back == test::position( d, n ) );
        CHECK_FALSE( seen[back] );
        seen[back] = true;
      }
    }
  }
}

TEST_CASE( "truth table validation" )
{
  auto const r3 = radix( 3 );
  CHECK_THROWS_AS( truth_table( r3, 2, { 0, 1, 2 } ), error );
  CHECK_THROWS_AS( truth_table( r3, 1, { 0, 1, 3 } ), error );
  CHECK_THROWS_AS( truth_table( r3, 1, { 0, -1, 2 } ), error );
  CHECK_THROWS_AS( truth_table( r3, 0, { 0 } ), error );

  auto const tt = truth_table::from_function( r3, 2, []( std::vector<int> const& x ) { return ( x[0] + x[1] ) % 3; } );
  CHECK( tt.entries() == std::vector<int>{ 0, 1, 2, 1, 2, 0, 2, 0, 1 } );

  std::mt19937_64 rng( 7 );
  auto const a = truth_table::random( r3, 2, rng );
  CHECK( a.size() == 9 );
  for ( auto e : a.entries() )
    CHECK( ( e >= 0 && e < 3 ) );
}

TEST_CASE( "state machine description validation" )
{
  auto const r3 = radix( 3 );
  fsm_spec good{ r3, 1, 1, { truth_table( r3, 2, std::vector<int>( 9, 0 ) ) }, {}, "t" };
  CHECK_NOTHROW( good.validate() );

  fsm_spec wrong_arity{ r3, 1, 1, { truth_table( r3, 1, { 0, 1, 2 } ) }, {}, "t" };
  CHECK_THROWS_AS( wrong_arity.validate(), error );

  fsm_spec missing_digit{ r3, 2, 0, { truth_table( r3, 2, std::vector<int>( 9, 0 ) ) }, {}, "t" };
  CHECK_THROWS_AS( missing_digit.validate(), error );
}
