#include <mvtlg/types.hpp>

#include <algorithm>
#include <limits>

namespace mvtlg
{

radix::radix( int n ) : n_( n )
{
  if ( n < 2 )
  {
    throw error( "radix must be at least 2, got " + std::to_string( n ) );
  }
}

mv_value::mv_value( int value, radix r ) : value_( value ), radix_( r )
{
  if ( value < 0 || value > r.max_level() )
  {
    throw error( "level " + std::to_string( value ) + " out of range for radix " + std::to_string( r.n() ) );
  }
}

mv_value nary_invert( mv_value v )
{
  return mv_value( v.base().max_level() - v.value(), v.base() );
}

uint64_t tt_index( std::span<mv_value const> digits, radix r )
{
  if ( digits.empty() )
  {
    throw error( "tt_index: empty digit tuple" );
  }
  uint64_t k = 0;
  for ( auto const& d : digits )
  {
    if ( d.base() != r )
    {
      throw error( "tt_index: mixed radices in digit tuple" );
    }
    k = k * r.n() + d.value();
  }
  return k;
}

uint64_t tt_index( std::span<int const> digits, radix r )
{
  if ( digits.empty() )
  {
    throw error( "tt_index: empty digit tuple" );
  }
  uint64_t k = 0;
  for ( auto d : digits )
  {
    if ( d < 0 || d > r.max_level() )
    {
      throw error( "tt_index: digit " + std::to_string( d ) + " out of range for radix " + std::to_string( r.n() ) );
    }
    k = k * r.n() + d;
  }
  return k;
}

std::vector<int> index_digits( uint64_t index, radix r, int arity )
{
  std::vector<int> digits( arity );
  for ( int j = arity - 1; j >= 0; --j )
  {
    digits[j] = static_cast<int>( index % r.n() );
    index /= r.n();
  }
  if ( index != 0 )
  {
    throw error( "index_digits: index does not fit in the requested arity" );
  }
  return digits;
}

uint64_t table_size( radix r, int arity )
{
  if ( arity < 1 )
  {
    throw error( "arity must be at least 1, got " + std::to_string( arity ) );
  }
  constexpr uint64_t limit = uint64_t{ 1 } << 32;
  uint64_t size = 1;
  for ( int j = 0; j < arity; ++j )
  {
    size *= r.n();
    if ( size > limit )
    {
      throw error( "table with radix " + std::to_string( r.n() ) + " and arity " + std::to_string( arity ) + " is too large" );
    }
  }
  return size;
}

truth_table::truth_table( radix r, int arity, std::vector<int> entries, std::string name )
    : radix_( r ), arity_( arity ), entries_( std::move( entries ) ), name_( std::move( name ) )
{
  auto const expected = table_size( r, arity );
  if ( entries_.size() != expected )
  {
    throw error( "truth table has " + std::to_string( entries_.size() ) + " entries, expected " + std::to_string( expected ) );
  }
  for ( std::size_t k = 0; k < entries_.size(); ++k )
  {
    if ( entries_[k] < 0 || entries_[k] > r.max_level() )
    {
      throw error( "truth table entry " + std::to_string( k ) + " = " + std::to_string( entries_[k] ) + " out of range for radix " + std::to_string( r.n() ) );
    }
  }
}

truth_table truth_table::random( radix r, int arity, std::mt19937_64& rng )
{
  std::uniform_int_distribution<int> level( 0, r.max_level() );
  std::vector<int> entries( table_size( r, arity ) );
  std::generate( entries.begin(), entries.end(), [&] { return level( rng ); } );
  return truth_table( r, arity, std::move( entries ) );
}

void fsm_spec::validate() const
{
  if ( state_arity < 1 )
  {
    throw error( "fsm: state_arity must be at least 1" );
  }
  if ( input_arity < 0 )
  {
    throw error( "fsm: input_arity must be non-negative" );
  }
  if ( static_cast<int>( transition.size() ) != state_arity )
  {
    throw error( "fsm: expected " + std::to_string( state_arity ) + " transition tables, got " + std::to_string( transition.size() ) );
  }
  auto const arity = state_arity + input_arity;
  auto check = [&]( truth_table const& tt, char const* what ) {
    if ( tt.base() != base )
    {
      throw error( std::string( "fsm: " ) + what + " table radix differs from the machine radix" );
    }
    if ( tt.arity() != arity )
    {
      throw error( std::string( "fsm: " ) + what + " table has arity " + std::to_string( tt.arity() ) + ", expected " + std::to_string( arity ) );
    }
  };
  for ( auto const& tt : transition )
  {
    check( tt, "transition" );
  }
  for ( auto const& tt : outputs )
  {
    check( tt, "output" );
  }
}

std::size_t config_bitstream::count_ones() const noexcept
{
  return static_cast<std::size_t>( std::count_if( bits.begin(), bits.end(), []( auto b ) { return b != 0; } ) );
}

} // namespace mvtlg
