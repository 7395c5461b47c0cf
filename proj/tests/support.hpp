// Shared helpers for the test binaries. The reference functions here are
// written from the definitions (positional value, one-hot decode, selection)
// and do not call into the library's own index helpers.

#pragma once

#include <mvtlg/netlist.hpp>
#include <mvtlg/sim.hpp>
#include <mvtlg/types.hpp>

#include <cstdint>
#include <vector>

namespace test
{

/* most-significant-first digits of k */
inline std::vector<int> digits( uint64_t k, int n, int m )
{
  std::vector<int> d( static_cast<std::size_t>( m ) );
  for ( int j = m - 1; j >= 0; --j )
  {
    d[static_cast<std::size_t>( j )] = static_cast<int>( k % static_cast<uint64_t>( n ) );
    k /= static_cast<uint64_t>( n );
  }
  return d;
}

/* sum of N^j x_j with x_0 last */
inline uint64_t position( std::vector<int> const& xs, int n )
{
  uint64_t k = 0, weight = 1;
  for ( auto it = xs.rbegin(); it != xs.rend(); ++it )
  {
    k += weight * static_cast<uint64_t>( *it );
    weight *= static_cast<uint64_t>( n );
  }
  return k;
}

inline uint64_t power( int n, int m )
{
  uint64_t p = 1;
  for ( int i = 0; i < m; ++i )
    p *= static_cast<uint64_t>( n );
  return p;
}

inline std::vector<int> one_hot( std::size_t size, uint64_t hot )
{
  std::vector<int> v( size, 0 );
  v[hot] = 1;
  return v;
}

/* single evaluation on a fresh state */
inline std::vector<int> eval_once( mvtlg::netlist const& nl, std::vector<int> const& inputs )
{
  mvtlg::simulator sim( nl );
  auto state = sim.initial_state();
  return sim.eval( inputs, state );
}

inline std::vector<int> eval_once( mvtlg::netlist const& nl, std::vector<int> const& inputs, mvtlg::config_bitstream const& bits )
{
  mvtlg::simulator sim( nl );
  auto state = sim.initial_state();
  sim.load_config( bits, state );
  return sim.eval( inputs, state );
}

/* two-latch model of the flip-flop: master follows d while g = 0,
   slave follows master while g != 0 */
struct master_slave_model
{
  int master;
  int slave;

  int apply( int d, int g )
  {
    if ( g == 0 )
    {
      master = d;
      return slave;
    }
    slave = master;
    return slave;
  }
};

} // namespace test
