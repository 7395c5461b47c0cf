#include <mvtlg/synth.hpp>

#include <string>

namespace mvtlg
{

namespace
{

std::string indexed( char const* prefix, uint64_t k )
{
  return prefix + std::to_string( k );
}

/* inputs x{M-1}..x0, returned most-significant first */
std::vector<net_id> digit_inputs( netlist_builder& b, char const* prefix, radix r, int m )
{
  std::vector<net_id> nets;
  nets.reserve( m );
  for ( int j = m - 1; j >= 0; --j )
  {
    nets.push_back( b.input( indexed( prefix, j ), signal_kind::of( r ) ) );
  }
  return nets;
}

uint64_t power( radix r, int m )
{
  return table_size( r, m );
}

void require_arity( int m )
{
  if ( m < 1 )
  {
    throw error( "number of digits must be at least 1, got " + std::to_string( m ) );
  }
}

/* decoder outputs b_0..b_{N^m-1} for the given select digits */
std::vector<net_id> add_decoder( netlist_builder& b, radix r, std::span<net_id const> digits, std::string const& path )
{
  auto const dec = build_decoder_m( r, static_cast<int>( digits.size() ) );
  return b.instantiate( dec, digits, path );
}

/* y = i_{index(selects)}; data given in index order */
net_id add_mux( netlist_builder& b, radix r, std::span<net_id const> data, std::span<net_id const> selects, bool tree, std::string const& path )
{
  auto const m = static_cast<int>( selects.size() );
  std::vector<net_id> ins( data.rbegin(), data.rend() );
  ins.insert( ins.end(), selects.begin(), selects.end() );
  auto const mux = build_mux_m( r, m, tree );
  return b.instantiate( mux, ins, path ).front();
}

truth_table const& check_tables( std::span<truth_table const> tables )
{
  if ( tables.empty() )
  {
    throw error( "synthesize: no tables given" );
  }
  for ( auto const& tt : tables )
  {
    if ( tt.base() != tables.front().base() || tt.arity() != tables.front().arity() )
    {
      throw error( "synthesize: all tables must share radix and arity" );
    }
  }
  return tables.front();
}

std::vector<std::string> output_names( std::span<truth_table const> tables )
{
  std::vector<std::string> names;
  for ( std::size_t j = 0; j < tables.size(); ++j )
  {
    if ( !tables[j].name().empty() )
      names.push_back( tables[j].name() );
    else
      names.push_back( tables.size() == 1 ? std::string( "y" ) : indexed( "y", j ) );
  }
  return names;
}

/* output level v is driven by constant v under control c_v */
net_id add_decoder_realization( netlist_builder& b, truth_table const& tt, std::span<net_id const> decoded, std::string const& name )
{
  auto const r = tt.base();
  auto const y = b.add_net( signal_kind::of( r ), name );
  for ( int v = 0; v < r.n(); ++v )
  {
    std::vector<net_id> group;
    for ( uint64_t k = 0; k < tt.size(); ++k )
    {
      if ( tt[k] == v )
        group.push_back( decoded[k] );
    }
    if ( group.empty() )
      continue;
    auto const control = group.size() == 1 ? group.front() : b.or_( std::move( group ), name + "/c" + std::to_string( v ) );
    b.switch_onto( y, b.constant( v, signal_kind::of( r ) ), control );
  }
  return y;
}

net_id add_mux_realization( netlist_builder& b, truth_table const& tt, std::span<net_id const> inputs, bool tree, std::string const& path )
{
  auto const kind = signal_kind::of( tt.base() );
  std::vector<net_id> data;
  data.reserve( tt.size() );
  for ( uint64_t k = 0; k < tt.size(); ++k )
    data.push_back( b.constant( tt[k], kind ) );
  return add_mux( b, tt.base(), data, inputs, tree, path );
}

/* realizes `tables` over the given input nets; returns one net per table */
std::vector<net_id> add_functions( netlist_builder& b, std::span<truth_table const> tables, std::span<net_id const> inputs,
                                   synth_strategy strategy, std::vector<std::string> const& names )
{
  auto const& first = check_tables( tables );
  std::vector<net_id> outs;
  if ( strategy.kind == synth_strategy::style::decoder_based )
  {
    std::vector<net_id> shared;
    if ( strategy.share_decoder )
      shared = add_decoder( b, first.base(), inputs, "dec" );
    for ( std::size_t j = 0; j < tables.size(); ++j )
    {
      auto decoded = strategy.share_decoder ? shared : add_decoder( b, first.base(), inputs, names[j] + "/dec" );
      outs.push_back( add_decoder_realization( b, tables[j], decoded, names[j] ) );
    }
  }
  else
  {
    for ( std::size_t j = 0; j < tables.size(); ++j )
      outs.push_back( add_mux_realization( b, tables[j], inputs, strategy.tree, names[j] + "/mux" ) );
  }
  return outs;
}

/* storage cell with switches picking d (enable = 1) or the held value (enable = 0) */
net_id add_latch_stage( netlist_builder& b, net_id d, net_id enable, net_id enable_n, int reg, std::string const& name )
{
  auto const q = b.add_net( b.kind_of( d ), name );
  auto const held = b.state_latch( q, reg, name + "_held" );
  b.switch_onto( q, d, enable );
  b.switch_onto( q, held, enable_n );
  return q;
}

/* master-slave pair; the data switch into the master is added by connect_data */
struct flip_flop
{
  net_id master;
  net_id q;
};

flip_flop add_flip_flop( netlist_builder& b, signal_kind kind, net_id clock_high, net_id clock_low, int reg, std::string const& name )
{
  flip_flop ff;
  ff.master = b.add_net( kind, name + "_master" );
  auto const master_held = b.state_latch( ff.master, reg, name + "_master_held" );
  b.switch_onto( ff.master, master_held, clock_high );

  /* the slave reads the master's stored value, which equals the master
     output whenever the slave is transparent */
  ff.q = b.add_net( kind, name );
  auto const slave_held = b.state_latch( ff.q, reg, name + "_held" );
  b.switch_onto( ff.q, master_held, clock_high );
  b.switch_onto( ff.q, slave_held, clock_low );
  return ff;
}

void connect_data( netlist_builder& b, flip_flop const& ff, net_id d, net_id clock_low )
{
  b.switch_onto( ff.master, d, clock_low );
}

} // namespace

synth_strategy parse_strategy( std::string_view s )
{
  if ( s == "decoder" )
    return synth_strategy::decoder();
  if ( s == "mux" )
    return synth_strategy::mux( true );
  if ( s == "mux-flat" )
    return synth_strategy::mux( false );
  throw error( "unknown strategy '" + std::string( s ) + "' (expected decoder, mux or mux-flat)" );
}

netlist build_decoder_1( radix r )
{
  auto const n = r.n();
  netlist_builder b( "decoder1" );
  auto const x = b.input( "x", signal_kind::of( r ) );

  /* thermometer code: y_t = (x > t) for t = N-2 down to 0 */
  std::vector<net_id> y( n - 1 );
  for ( int t = n - 2; t >= 0; --t )
    y[t] = b.tlg( x, t, indexed( "y", t ) );

  /* b_n = !y_n & y_{n-1}, with y_{-1} = 1 and y_{N-1} = 0 folded away */
  std::vector<net_id> outs( n );
  outs[0] = b.not_( y[0], "b0" );
  for ( int k = 1; k <= n - 2; ++k )
  {
    auto const ny = b.not_( y[k], indexed( "ny", k ) );
    outs[k] = b.and_( { ny, y[k - 1] }, indexed( "b", k ) );
  }
  outs[n - 1] = y[n - 2];

  for ( int k = 0; k < n; ++k )
    b.output( indexed( "b", k ), outs[k] );
  return std::move( b ).build();
}

netlist build_decoder_m( radix r, int m )
{
  require_arity( m );
  if ( m == 1 )
    return build_decoder_1( r );

  auto const n = r.n();
  auto const size = power( r, m );
  netlist_builder b( "decoder" + std::to_string( m ) );
  auto const xs = digit_inputs( b, "x", r, m );
  auto const dec1 = build_decoder_1( r );

  /* per_digit[j] decodes x_j */
  std::vector<std::vector<net_id>> per_digit( m );
  for ( int j = 0; j < m; ++j )
  {
    net_id const x = xs[m - 1 - j];
    per_digit[j] = b.instantiate( dec1, std::span<net_id const>( &x, 1 ), indexed( "d", j ) );
  }

  for ( uint64_t k = 0; k < size; ++k )
  {
    std::vector<net_id> terms;
    terms.reserve( m );
    auto rest = k;
    for ( int j = 0; j < m; ++j )
    {
      terms.push_back( per_digit[j][rest % n] );
      rest /= n;
    }
    b.output( indexed( "b", k ), b.and_( std::move( terms ), indexed( "b", k ) ) );
  }
  return std::move( b ).build();
}

netlist build_mux_1( radix r )
{
  auto const n = r.n();
  netlist_builder b( "mux1" );
  std::vector<net_id> data( n );
  for ( int k = n - 1; k >= 0; --k )
    data[k] = b.input( indexed( "i", k ), signal_kind::of( r ) );
  auto const s = b.input( "s", signal_kind::of( r ) );

  auto const decoded = add_decoder( b, r, std::span<net_id const>( &s, 1 ), "dec" );
  auto const y = b.add_net( signal_kind::of( r ), "y" );
  for ( int k = 0; k < n; ++k )
    b.switch_onto( y, data[k], decoded[k] );
  b.output( "y", y );
  return std::move( b ).build();
}

netlist build_mux_m( radix r, int m, bool tree )
{
  require_arity( m );
  if ( m == 1 && tree )
    return build_mux_1( r );

  auto const n = r.n();
  auto const size = power( r, m );
  netlist_builder b( std::string( tree ? "mux_tree" : "mux_flat" ) + std::to_string( m ) );
  std::vector<net_id> data( size );
  for ( uint64_t k = size; k-- > 0; )
    data[k] = b.input( indexed( "i", k ), signal_kind::of( r ) );
  auto const selects = digit_inputs( b, "s", r, m );

  net_id y;
  if ( tree )
  {
    auto const mux1 = build_mux_1( r );
    auto level = data;
    for ( int stage = 0; stage < m; ++stage )
    {
      net_id const s = selects[m - 1 - stage];
      std::vector<net_id> next;
      next.reserve( level.size() / n );
      for ( std::size_t g = 0; g < level.size() / n; ++g )
      {
        std::vector<net_id> ins;
        for ( int k = n - 1; k >= 0; --k )
          ins.push_back( level[g * n + k] );
        ins.push_back( s );
        next.push_back( b.instantiate( mux1, ins, "st" + std::to_string( stage ) + "_" + std::to_string( g ) ).front() );
      }
      level = std::move( next );
    }
    y = level.front();
  }
  else
  {
    auto const decoded = add_decoder( b, r, selects, "dec" );
    y = b.add_net( signal_kind::of( r ), "y" );
    for ( uint64_t k = 0; k < size; ++k )
      b.switch_onto( y, data[k], decoded[k] );
  }
  b.output( "y", y );
  return std::move( b ).build();
}

netlist synthesize( std::span<truth_table const> tables, synth_strategy strategy )
{
  auto const& first = check_tables( tables );
  auto const names = output_names( tables );
  netlist_builder b( strategy.kind == synth_strategy::style::decoder_based ? "decoder_function" : "mux_function" );
  auto const xs = digit_inputs( b, "x", first.base(), first.arity() );
  auto const outs = add_functions( b, tables, xs, strategy, names );
  for ( std::size_t j = 0; j < outs.size(); ++j )
    b.output( names[j], outs[j] );
  return std::move( b ).build();
}

netlist synthesize( truth_table const& tt, synth_strategy strategy )
{
  return synthesize( std::span<truth_table const>( &tt, 1 ), strategy );
}

netlist synth_decoder_based( truth_table const& tt )
{
  return synthesize( tt, synth_strategy::decoder() );
}

netlist synth_mux_based( truth_table const& tt, bool tree )
{
  return synthesize( tt, synth_strategy::mux( tree ) );
}

netlist build_fabric_decoder( radix r, int m )
{
  require_arity( m );
  auto const n = r.n();
  auto const size = power( r, m );
  netlist_builder b( "fabric_decoder" );
  auto const xs = digit_inputs( b, "x", r, m );
  auto const decoded = add_decoder( b, r, xs, "dec" );

  auto const y = b.add_net( signal_kind::of( r ), "y" );
  for ( int k = 0; k < n; ++k )
  {
    std::vector<net_id> terms;
    terms.reserve( size );
    for ( uint64_t idx = 0; idx < size; ++idx )
    {
      auto const bit = b.config_latch( "d" + std::to_string( k ) + "_" + std::to_string( idx ) );
      terms.push_back( b.and_( { decoded[idx], bit } ) );
    }
    auto const control = b.or_( std::move( terms ), indexed( "c", k ) );
    b.switch_onto( y, b.constant( k, signal_kind::of( r ) ), control );
  }
  b.output( "y", y );
  b.set_fabric( { fabric_kind::decoder, n, m } );
  return std::move( b ).build();
}

netlist build_fabric_mux( radix r, int m, bool tree )
{
  require_arity( m );
  auto const n = r.n();
  auto const size = power( r, m );
  netlist_builder b( "fabric_mux" );
  auto const selects = digit_inputs( b, "x", r, m );

  /* selection block k: i_k = sum_n n * d^k_n */
  std::vector<net_id> data( size );
  for ( uint64_t k = 0; k < size; ++k )
  {
    data[k] = b.add_net( signal_kind::of( r ), indexed( "i", k ) );
    for ( int level = 0; level < n; ++level )
    {
      auto const bit = b.config_latch( "d" + std::to_string( k ) + "_" + std::to_string( level ) );
      b.switch_onto( data[k], b.constant( level, signal_kind::of( r ) ), bit );
    }
  }
  b.output( "y", add_mux( b, r, data, selects, tree, "mux" ) );
  b.set_fabric( { tree ? fabric_kind::mux_tree : fabric_kind::mux_flat, n, m } );
  return std::move( b ).build();
}

netlist build_fabric( fabric_kind kind, radix r, int m )
{
  switch ( kind )
  {
  case fabric_kind::decoder:
    return build_fabric_decoder( r, m );
  case fabric_kind::mux_tree:
    return build_fabric_mux( r, m, true );
  case fabric_kind::mux_flat:
    return build_fabric_mux( r, m, false );
  }
  throw error( "unknown fabric kind" );
}

config_bitstream derive_config( truth_table const& tt, fabric_kind kind )
{
  auto const n = static_cast<uint64_t>( tt.base().n() );
  auto const size = tt.size();
  config_bitstream cfg;
  cfg.bits.assign( n * size, 0 );
  for ( uint64_t k = 0; k < size; ++k )
  {
    auto const level = static_cast<uint64_t>( tt[k] );
    if ( kind == fabric_kind::decoder )
      cfg.bits[level * size + k] = 1;
    else
      cfg.bits[k * n + level] = 1;
  }
  return cfg;
}

config_bitstream derive_config( truth_table const& tt, netlist const& fabric )
{
  auto const& info = fabric.fabric();
  if ( !info )
  {
    throw error( "derive_config: netlist '" + fabric.type_name() + "' is not a fabric" );
  }
  if ( info->levels != tt.base().n() || info->arity != tt.arity() )
  {
    throw error( "derive_config: table is radix " + std::to_string( tt.base().n() ) + ", arity " + std::to_string( tt.arity() ) +
                 " but the fabric is radix " + std::to_string( info->levels ) + ", arity " + std::to_string( info->arity ) );
  }
  return derive_config( tt, info->kind );
}

netlist build_nary_dlatch( radix r )
{
  netlist_builder b( "dlatch" );
  auto const d = b.input( "d", signal_kind::of( r ) );
  auto const g = b.input( "g", signal_kind::of( r ) );
  auto const enable = b.tlg( g, 0, "en" );
  auto const enable_n = b.not_( enable, "en_n" );
  b.output( "q", add_latch_stage( b, d, enable, enable_n, 0, "q" ) );
  return std::move( b ).build();
}

netlist build_nary_dff( radix r )
{
  netlist_builder b( "dff" );
  auto const d = b.input( "d", signal_kind::of( r ) );
  auto const g = b.input( "g", signal_kind::of( r ) );
  auto const high = b.tlg( g, 0, "g_high" );
  auto const low = b.not_( high, "g_low" );
  auto const ff = add_flip_flop( b, signal_kind::of( r ), high, low, 0, "q" );
  connect_data( b, ff, d, low );
  b.output( "q", ff.q );
  return std::move( b ).build();
}

netlist compile_fsm( fsm_spec const& spec, synth_strategy strategy )
{
  spec.validate();
  auto const r = spec.base;
  auto const kind = signal_kind::of( r );
  netlist_builder b( "fsm" );

  std::vector<net_id> inputs;
  for ( int j = spec.input_arity - 1; j >= 0; --j )
    inputs.push_back( b.input( indexed( "i", j ), kind ) );
  auto const clk = b.input( "clk", kind );
  b.set_clock( clk );
  auto const high = b.tlg( clk, 0, "clk_high" );
  auto const low = b.not_( high, "clk_low" );

  /* state digit p (most significant first) lives in flip-flop p, register p */
  std::vector<flip_flop> regs;
  std::vector<net_id> fn_inputs;
  for ( int p = 0; p < spec.state_arity; ++p )
  {
    auto const idx = spec.state_arity - 1 - p;
    regs.push_back( add_flip_flop( b, kind, high, low, p, indexed( "q", idx ) ) );
    b.record_instance( "dff", indexed( "q", idx ) );
    fn_inputs.push_back( regs.back().q );
  }
  fn_inputs.insert( fn_inputs.end(), inputs.begin(), inputs.end() );

  std::vector<truth_table> tables = spec.transition;
  tables.insert( tables.end(), spec.outputs.begin(), spec.outputs.end() );
  std::vector<std::string> names;
  for ( int p = 0; p < spec.state_arity; ++p )
    names.push_back( indexed( "next", spec.state_arity - 1 - p ) );
  for ( std::size_t o = 0; o < spec.outputs.size(); ++o )
    names.push_back( indexed( "y", spec.outputs.size() - 1 - o ) );

  auto const fns = add_functions( b, tables, fn_inputs, strategy, names );
  for ( int p = 0; p < spec.state_arity; ++p )
    connect_data( b, regs[p], fns[p], low );

  for ( int p = 0; p < spec.state_arity; ++p )
    b.output( indexed( "q", spec.state_arity - 1 - p ), regs[p].q );
  for ( std::size_t o = 0; o < spec.outputs.size(); ++o )
    b.output( names[spec.state_arity + o], fns[spec.state_arity + o] );
  return std::move( b ).build();
}

} // namespace mvtlg
