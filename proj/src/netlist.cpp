#include <mvtlg/netlist.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace mvtlg
{

namespace
{

template<class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};

std::string gate_label( gate const& g )
{
  return "gate " + std::to_string( g.id ) + " (" + std::string( kind_name( g.kind ) ) + ")";
}

bool is_latch( gate_kind const& k )
{
  return std::holds_alternative<config_latch>( k ) || std::holds_alternative<nary_dlatch>( k );
}

} // namespace

std::string to_string( signal_kind k )
{
  return k.nary ? "nary(" + std::to_string( k.levels ) + ")" : "binary";
}

std::string_view kind_name( gate_kind const& kind )
{
  return std::visit( overloaded{
                         []( tlg_gate const& ) { return std::string_view{ "tlg" }; },
                         []( and_gate const& ) { return std::string_view{ "and" }; },
                         []( or_gate const& ) { return std::string_view{ "or" }; },
                         []( not_gate const& ) { return std::string_view{ "not" }; },
                         []( switch_gate const& ) { return std::string_view{ "switch" }; },
                         []( nary_inverter const& ) { return std::string_view{ "nary_inverter" }; },
                         []( config_latch const& ) { return std::string_view{ "config_latch" }; },
                         []( nary_dlatch const& ) { return std::string_view{ "nary_dlatch" }; },
                         []( const_gate const& ) { return std::string_view{ "const" }; },
                         []( input_port const& ) { return std::string_view{ "input" }; },
                         []( output_port const& ) { return std::string_view{ "output" }; } },
                     kind );
}

std::string_view to_string( fabric_kind k )
{
  switch ( k )
  {
  case fabric_kind::decoder:
    return "decoder";
  case fabric_kind::mux_tree:
    return "mux";
  case fabric_kind::mux_flat:
    return "mux-flat";
  }
  return "?";
}

fabric_kind parse_fabric_kind( std::string_view s )
{
  if ( s == "decoder" )
    return fabric_kind::decoder;
  if ( s == "mux" )
    return fabric_kind::mux_tree;
  if ( s == "mux-flat" )
    return fabric_kind::mux_flat;
  throw error( "unknown fabric kind '" + std::string( s ) + "' (expected decoder, mux or mux-flat)" );
}

/* netlist */

std::size_t netlist::num_registers() const noexcept
{
  int max_reg = -1;
  for ( auto id : state_latches_ )
  {
    max_reg = std::max( max_reg, std::get<nary_dlatch>( gates_[id].kind ).reg );
  }
  return static_cast<std::size_t>( max_reg + 1 );
}

std::string const& netlist::port_name( gate_id port ) const
{
  auto const& k = gate_at( port ).kind;
  if ( auto const* in = std::get_if<input_port>( &k ) )
    return in->name;
  if ( auto const* out = std::get_if<output_port>( &k ) )
    return out->name;
  throw error( "gate " + std::to_string( port ) + " is not a port" );
}

signal_kind netlist::port_kind( gate_id port ) const
{
  auto const& k = gate_at( port ).kind;
  if ( auto const* in = std::get_if<input_port>( &k ) )
    return in->kind;
  if ( auto const* out = std::get_if<output_port>( &k ) )
    return out->kind;
  throw error( "gate " + std::to_string( port ) + " is not a port" );
}

net_id netlist::port_net( gate_id port ) const
{
  auto const& g = gate_at( port );
  if ( std::holds_alternative<input_port>( g.kind ) )
    return *g.output;
  if ( std::holds_alternative<output_port>( g.kind ) )
    return g.inputs.at( 0 );
  throw error( "gate " + std::to_string( port ) + " is not a port" );
}

std::vector<std::vector<gate_id>> netlist::drivers() const
{
  std::vector<std::vector<gate_id>> result( nets_.size() );
  for ( auto const& g : gates_ )
  {
    if ( g.output && *g.output < nets_.size() )
    {
      result[*g.output].push_back( g.id );
    }
  }
  return result;
}

/* validation */

namespace
{

void check_pins( netlist const& nl, gate const& g )
{
  auto const& nets = nl.nets();
  for ( auto n : g.inputs )
  {
    if ( n >= nets.size() )
      throw error( gate_label( g ) + " reads unknown net " + std::to_string( n ) );
  }
  if ( g.output && *g.output >= nets.size() )
    throw error( gate_label( g ) + " drives unknown net " + std::to_string( *g.output ) );

  auto expect_inputs = [&]( std::size_t count ) {
    if ( g.inputs.size() != count )
      throw error( gate_label( g ) + " has " + std::to_string( g.inputs.size() ) + " inputs, expected " + std::to_string( count ) );
  };
  auto expect_output = [&]( bool present ) {
    if ( g.output.has_value() != present )
      throw error( gate_label( g ) + ( present ? " has no output net" : " must not drive a net" ) );
  };
  auto in_kind = [&]( std::size_t pin ) { return nets[g.inputs[pin]].kind; };
  auto out_kind = [&]() { return nets[*g.output].kind; };
  auto require = [&]( bool ok, std::string const& what ) {
    if ( !ok )
      throw error( gate_label( g ) + ": " + what );
  };
  auto const binary = signal_kind::binary();

  std::visit( overloaded{
                  [&]( tlg_gate const& t ) {
                    expect_inputs( 1 );
                    expect_output( true );
                    require( in_kind( 0 ).nary, "threshold gate input must be a radix-N net" );
                    require( out_kind() == binary, "threshold gate output must be binary" );
                    require( t.threshold >= -1 && t.threshold <= in_kind( 0 ).max_level(),
                             "threshold " + std::to_string( t.threshold ) + " outside -1..N-1" );
                  },
                  [&]( and_gate const& a ) {
                    require( a.fan_in >= 1, "fan-in must be positive" );
                    expect_inputs( a.fan_in );
                    expect_output( true );
                    for ( std::size_t i = 0; i < g.inputs.size(); ++i )
                      require( in_kind( i ) == binary, "AND inputs must be binary" );
                    require( out_kind() == binary, "AND output must be binary" );
                  },
                  [&]( or_gate const& o ) {
                    require( o.fan_in >= 1, "fan-in must be positive" );
                    expect_inputs( o.fan_in );
                    expect_output( true );
                    for ( std::size_t i = 0; i < g.inputs.size(); ++i )
                      require( in_kind( i ) == binary, "OR inputs must be binary" );
                    require( out_kind() == binary, "OR output must be binary" );
                  },
                  [&]( not_gate const& ) {
                    expect_inputs( 1 );
                    expect_output( true );
                    require( in_kind( 0 ) == binary && out_kind() == binary, "NOT pins must be binary" );
                  },
                  [&]( switch_gate const& ) {
                    expect_inputs( 2 );
                    expect_output( true );
                    require( in_kind( 0 ).nary, "switch data must be a radix-N net" );
                    require( in_kind( 1 ) == binary, "switch control must be binary" );
                    require( out_kind() == in_kind( 0 ), "switch output radix must match its data radix" );
                  },
                  [&]( nary_inverter const& inv ) {
                    expect_inputs( 1 );
                    expect_output( true );
                    require( in_kind( 0 ) == signal_kind{ true, inv.levels } && out_kind() == in_kind( 0 ),
                             "inverter pins must carry its radix" );
                  },
                  [&]( config_latch const& ) {
                    expect_inputs( 0 );
                    expect_output( true );
                    require( out_kind() == binary, "configuration latch output must be binary" );
                  },
                  [&]( nary_dlatch const& l ) {
                    expect_inputs( 1 );
                    expect_output( true );
                    require( l.reg >= 0, "register index must be non-negative" );
                    require( in_kind( 0 ) == signal_kind{ true, l.levels } && out_kind() == in_kind( 0 ),
                             "storage cell pins must carry its radix" );
                  },
                  [&]( const_gate const& c ) {
                    expect_inputs( 0 );
                    expect_output( true );
                    require( out_kind() == c.kind, "constant kind must match its net" );
                    require( c.value >= 0 && c.value <= c.kind.max_level(), "constant out of range" );
                  },
                  [&]( input_port const& p ) {
                    expect_inputs( 0 );
                    expect_output( true );
                    require( out_kind() == p.kind, "input port kind must match its net" );
                  },
                  [&]( output_port const& p ) {
                    expect_inputs( 1 );
                    expect_output( false );
                    require( in_kind( 0 ) == p.kind, "output port kind must match its net" );
                  } },
              g.kind );
}

template<typename Kind>
void check_listing( netlist const& nl, std::vector<gate_id> const& listed, char const* what )
{
  std::set<gate_id> expected;
  for ( auto const& g : nl.gates() )
  {
    if ( std::holds_alternative<Kind>( g.kind ) )
      expected.insert( g.id );
  }
  std::set<gate_id> seen( listed.begin(), listed.end() );
  if ( seen.size() != listed.size() || seen != expected )
  {
    throw error( std::string( what ) + " list does not match the gates of that kind" );
  }
}

} // namespace

std::vector<net_id> levelize( netlist const& nl )
{
  auto const& nets = nl.nets();
  auto const& gates = nl.gates();
  std::vector<std::vector<net_id>> consumers( nets.size() );
  std::vector<std::size_t> pending( nets.size(), 0 );

  for ( auto const& g : gates )
  {
    if ( !g.output || is_latch( g.kind ) )
      continue;
    std::set<net_id> deps( g.inputs.begin(), g.inputs.end() );
    for ( auto d : deps )
    {
      consumers[d].push_back( *g.output );
      ++pending[*g.output];
    }
  }

  std::deque<net_id> ready;
  for ( net_id n = 0; n < nets.size(); ++n )
  {
    if ( pending[n] == 0 )
      ready.push_back( n );
  }
  std::vector<net_id> order;
  order.reserve( nets.size() );
  while ( !ready.empty() )
  {
    auto n = ready.front();
    ready.pop_front();
    order.push_back( n );
    for ( auto c : consumers[n] )
    {
      if ( --pending[c] == 0 )
        ready.push_back( c );
    }
  }
  if ( order.size() != nets.size() )
  {
    for ( net_id n = 0; n < nets.size(); ++n )
    {
      if ( pending[n] != 0 )
        throw error( "combinational cycle through net " + std::to_string( n ) + ( nets[n].name.empty() ? "" : " '" + nets[n].name + "'" ) );
    }
  }
  return order;
}

void validate( netlist const& nl )
{
  auto const& nets = nl.nets();
  auto const& gates = nl.gates();

  for ( std::size_t i = 0; i < nets.size(); ++i )
  {
    if ( nets[i].id != i )
      throw error( "net ids must be dense and ordered (net at position " + std::to_string( i ) + " has id " + std::to_string( nets[i].id ) + ")" );
    if ( nets[i].kind.levels < 2 || ( !nets[i].kind.nary && nets[i].kind.levels != 2 ) )
      throw error( "net " + std::to_string( i ) + " has an invalid signal kind" );
  }
  for ( std::size_t i = 0; i < gates.size(); ++i )
  {
    if ( gates[i].id != i )
      throw error( "gate ids must be dense and ordered (gate at position " + std::to_string( i ) + " has id " + std::to_string( gates[i].id ) + ")" );
    check_pins( nl, gates[i] );
  }

  auto const drivers = nl.drivers();
  for ( net_id n = 0; n < nets.size(); ++n )
  {
    auto const& ds = drivers[n];
    auto const label = "net " + std::to_string( n ) + ( nets[n].name.empty() ? "" : " '" + nets[n].name + "'" );
    if ( ds.empty() )
      throw error( label + " has no driver" );
    auto const switches = std::count_if( ds.begin(), ds.end(), [&]( auto id ) { return std::holds_alternative<switch_gate>( gates[id].kind ); } );
    if ( switches == 0 && ds.size() > 1 )
      throw error( label + " is driven by " + std::to_string( ds.size() ) + " gates" );
    if ( switches > 0 && static_cast<std::size_t>( switches ) != ds.size() )
      throw error( label + " mixes switch and non-switch drivers" );
  }

  check_listing<input_port>( nl, nl.inputs(), "input port" );
  check_listing<output_port>( nl, nl.outputs(), "output port" );
  check_listing<config_latch>( nl, nl.latch_order(), "latch order" );
  check_listing<nary_dlatch>( nl, nl.state_latches(), "state latch" );

  std::set<std::string> names;
  for ( auto id : nl.inputs() )
  {
    if ( !names.insert( nl.port_name( id ) ).second )
      throw error( "duplicate input port name '" + nl.port_name( id ) + "'" );
  }
  names.clear();
  for ( auto id : nl.outputs() )
  {
    if ( !names.insert( nl.port_name( id ) ).second )
      throw error( "duplicate output port name '" + nl.port_name( id ) + "'" );
  }

  if ( auto clk = nl.clock_input() )
  {
    if ( *clk >= nl.inputs().size() )
      throw error( "clock input index out of range" );
    if ( !nl.port_kind( nl.inputs()[*clk] ).nary )
      throw error( "clock input must be a radix-N port" );
  }

  if ( auto const& f = nl.fabric() )
  {
    auto const expected = table_size( radix( f->levels ), f->arity ) * f->levels;
    if ( nl.latch_order().size() != expected )
      throw error( "fabric declares " + std::to_string( expected ) + " configuration latches but has " + std::to_string( nl.latch_order().size() ) );
  }

  levelize( nl );
}

/* builder */

netlist_builder::netlist_builder( std::string type_name )
{
  nl_.type_name_ = std::move( type_name );
}

net_id netlist_builder::add_net( signal_kind kind, std::string name )
{
  auto const id = static_cast<net_id>( nl_.nets_.size() );
  nl_.nets_.push_back( { id, kind, std::move( name ) } );
  return id;
}

gate_id netlist_builder::add_gate( gate_kind kind, std::vector<net_id> inputs, std::optional<net_id> output )
{
  auto const id = static_cast<gate_id>( nl_.gates_.size() );
  if ( std::holds_alternative<input_port>( kind ) )
    nl_.inputs_.push_back( id );
  else if ( std::holds_alternative<output_port>( kind ) )
    nl_.outputs_.push_back( id );
  else if ( std::holds_alternative<mvtlg::config_latch>( kind ) )
    nl_.latch_order_.push_back( id );
  else if ( std::holds_alternative<nary_dlatch>( kind ) )
    nl_.state_latches_.push_back( id );
  nl_.gates_.push_back( { id, std::move( kind ), std::move( inputs ), output } );
  return id;
}

net_id netlist_builder::input( std::string name, signal_kind kind )
{
  auto const n = add_net( kind, name );
  add_gate( input_port{ std::move( name ), kind }, {}, n );
  return n;
}

void netlist_builder::output( std::string name, net_id n )
{
  add_gate( output_port{ std::move( name ), kind_of( n ) }, { n }, std::nullopt );
}

net_id netlist_builder::constant( int value, signal_kind kind )
{
  auto const key = std::make_pair( value, std::make_pair( kind.nary, kind.levels ) );
  if ( auto it = constants_.find( key ); it != constants_.end() )
    return it->second;
  auto const n = add_net( kind, ( kind.nary ? "const" : "bconst" ) + std::to_string( value ) );
  add_gate( const_gate{ value, kind }, {}, n );
  constants_.emplace( key, n );
  return n;
}

net_id netlist_builder::tlg( net_id x, int threshold, std::string name )
{
  auto const n = add_net( signal_kind::binary(), std::move( name ) );
  add_gate( tlg_gate{ threshold }, { x }, n );
  return n;
}

net_id netlist_builder::and_( std::vector<net_id> ins, std::string name )
{
  auto const n = add_net( signal_kind::binary(), std::move( name ) );
  auto const fan_in = static_cast<int>( ins.size() );
  add_gate( and_gate{ fan_in }, std::move( ins ), n );
  return n;
}

net_id netlist_builder::or_( std::vector<net_id> ins, std::string name )
{
  auto const n = add_net( signal_kind::binary(), std::move( name ) );
  auto const fan_in = static_cast<int>( ins.size() );
  add_gate( or_gate{ fan_in }, std::move( ins ), n );
  return n;
}

net_id netlist_builder::not_( net_id a, std::string name )
{
  auto const n = add_net( signal_kind::binary(), std::move( name ) );
  add_gate( not_gate{}, { a }, n );
  return n;
}

net_id netlist_builder::invert( net_id a, std::string name )
{
  auto const kind = kind_of( a );
  auto const n = add_net( kind, std::move( name ) );
  add_gate( nary_inverter{ kind.levels }, { a }, n );
  return n;
}

net_id netlist_builder::config_latch( std::string name )
{
  auto const n = add_net( signal_kind::binary(), std::move( name ) );
  add_gate( mvtlg::config_latch{}, {}, n );
  return n;
}

net_id netlist_builder::state_latch( net_id d, int reg, std::string name )
{
  auto const kind = kind_of( d );
  auto const n = add_net( kind, std::move( name ) );
  add_gate( nary_dlatch{ kind.levels, reg }, { d }, n );
  return n;
}

void netlist_builder::switch_onto( net_id out, net_id data, net_id control )
{
  add_gate( switch_gate{}, { data, control }, out );
}

std::vector<net_id> netlist_builder::instantiate( netlist const& sub, std::span<net_id const> inputs, std::string const& path, int reg_base )
{
  if ( inputs.size() != sub.inputs().size() )
  {
    throw error( "instantiating '" + sub.type_name() + "' with " + std::to_string( inputs.size() ) + " inputs, expected " + std::to_string( sub.inputs().size() ) );
  }

  constexpr net_id unmapped = ~net_id{ 0 };
  std::vector<net_id> map( sub.nets().size(), unmapped );
  for ( std::size_t i = 0; i < inputs.size(); ++i )
  {
    auto const port = sub.inputs()[i];
    if ( kind_of( inputs[i] ) != sub.port_kind( port ) )
    {
      throw error( "instantiating '" + sub.type_name() + "': input '" + sub.port_name( port ) + "' expects " + to_string( sub.port_kind( port ) ) );
    }
    map[sub.port_net( port )] = inputs[i];
  }
  for ( auto const& g : sub.gates() )
  {
    if ( auto const* c = std::get_if<const_gate>( &g.kind ) )
      map[*g.output] = constant( c->value, c->kind );
  }
  for ( auto const& n : sub.nets() )
  {
    if ( map[n.id] == unmapped )
      map[n.id] = add_net( n.kind, n.name.empty() ? std::string{} : path + "/" + n.name );
  }

  auto const latches_before = nl_.latch_order_.size();
  auto const cells_before = nl_.state_latches_.size();
  std::vector<gate_id> gate_map( sub.gates().size(), ~gate_id{ 0 } );
  for ( auto const& g : sub.gates() )
  {
    if ( std::holds_alternative<input_port>( g.kind ) || std::holds_alternative<output_port>( g.kind ) || std::holds_alternative<const_gate>( g.kind ) )
      continue;
    std::vector<net_id> ins;
    ins.reserve( g.inputs.size() );
    for ( auto n : g.inputs )
      ins.push_back( map[n] );
    auto kind = g.kind;
    if ( auto* l = std::get_if<nary_dlatch>( &kind ) )
      l->reg += reg_base;
    gate_map[g.id] = add_gate( std::move( kind ), std::move( ins ), g.output ? std::optional<net_id>( map[*g.output] ) : std::nullopt );
  }

  /* keep the sub-block's own latch ordering */
  nl_.latch_order_.resize( latches_before );
  for ( auto id : sub.latch_order() )
    nl_.latch_order_.push_back( gate_map[id] );
  nl_.state_latches_.resize( cells_before );
  for ( auto id : sub.state_latches() )
    nl_.state_latches_.push_back( gate_map[id] );

  record_instance( sub.type_name(), path );
  for ( auto const& inst : sub.instances() )
  {
    record_instance( inst.type, path + "/" + inst.path );
  }

  std::vector<net_id> outs;
  outs.reserve( sub.outputs().size() );
  for ( auto port : sub.outputs() )
    outs.push_back( map[sub.port_net( port )] );
  return outs;
}

void netlist_builder::record_instance( std::string type, std::string path )
{
  nl_.instances_.push_back( { std::move( type ), std::move( path ) } );
}

void netlist_builder::set_clock( net_id clock_net )
{
  for ( std::size_t i = 0; i < nl_.inputs_.size(); ++i )
  {
    if ( *nl_.gates_[nl_.inputs_[i]].output == clock_net )
    {
      nl_.clock_input_ = i;
      return;
    }
  }
  throw error( "clock net is not an input port" );
}

void netlist_builder::set_clock_input( std::size_t input_index )
{
  nl_.clock_input_ = input_index;
}

void netlist_builder::set_fabric( fabric_info info )
{
  nl_.fabric_ = info;
}

void netlist_builder::set_order( std::vector<gate_id> inputs, std::vector<gate_id> outputs,
                                 std::vector<gate_id> latch_order, std::vector<gate_id> state_latches )
{
  nl_.inputs_ = std::move( inputs );
  nl_.outputs_ = std::move( outputs );
  nl_.latch_order_ = std::move( latch_order );
  nl_.state_latches_ = std::move( state_latches );
}

netlist netlist_builder::build() &&
{
  validate( nl_ );
  return std::move( nl_ );
}

/* statistics */

std::size_t gate_stats::kind( std::string_view name ) const
{
  auto it = per_kind.find( name );
  return it == per_kind.end() ? 0 : it->second;
}

std::size_t gate_stats::instances_of( std::string_view type ) const
{
  auto it = per_instance.find( type );
  return it == per_instance.end() ? 0 : it->second;
}

gate_stats compute_gate_stats( netlist const& nl )
{
  gate_stats st;
  for ( auto const& g : nl.gates() )
  {
    ++st.per_kind[std::string( kind_name( g.kind ) )];
  }
  for ( auto const& inst : nl.instances() )
  {
    ++st.per_instance[inst.type];
  }
  st.tlg_count = st.kind( "tlg" );
  st.and_count = st.kind( "and" );
  st.or_count = st.kind( "or" );
  st.not_count = st.kind( "not" );
  st.switch_count = st.kind( "switch" );
  st.config_latch_count = st.kind( "config_latch" );
  st.state_latch_count = st.kind( "nary_dlatch" );
  st.latch_count = st.config_latch_count + st.state_latch_count;
  return st;
}

} // namespace mvtlg
