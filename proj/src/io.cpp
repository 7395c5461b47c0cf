#include <mvtlg/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mvtlg
{

using json = nlohmann::json;

namespace
{

constexpr char const* version = "1";

std::string field_label( std::string_view field )
{
  return "field '" + std::string( field ) + "'";
}

json parse_document( std::string_view text, std::string_view format )
{
  json doc;
  try
  {
    doc = json::parse( text );
  }
  catch ( json::parse_error const& e )
  {
    auto const offset = std::min<std::size_t>( e.byte, text.size() );
    auto const line = 1 + std::count( text.begin(), text.begin() + static_cast<std::ptrdiff_t>( offset ), '\n' );
    throw parse_error( "line " + std::to_string( line ), "malformed JSON" );
  }
  if ( !doc.is_object() )
    throw parse_error( "document", "expected a JSON object" );
  if ( !doc.contains( "format" ) || doc["format"] != format )
    throw parse_error( field_label( "format" ), "expected \"" + std::string( format ) + "\"" );
  if ( !doc.contains( "version" ) || doc["version"] != version )
    throw parse_error( field_label( "version" ), "unsupported version (expected \"1\")" );
  return doc;
}

json const& require( json const& obj, std::string_view field )
{
  auto it = obj.find( field );
  if ( it == obj.end() )
    throw parse_error( field_label( field ), "missing" );
  return *it;
}

int get_int( json const& obj, std::string_view field )
{
  auto const& v = require( obj, field );
  if ( !v.is_number_integer() )
    throw parse_error( field_label( field ), "must be an integer" );
  return v.get<int>();
}

std::string get_string( json const& obj, std::string_view field, std::string fallback = {} )
{
  auto it = obj.find( field );
  if ( it == obj.end() )
    return fallback;
  if ( !it->is_string() )
    throw parse_error( field_label( field ), "must be a string" );
  return it->get<std::string>();
}

std::vector<int> get_int_array( json const& obj, std::string_view field )
{
  auto const& v = require( obj, field );
  if ( !v.is_array() )
    throw parse_error( field_label( field ), "must be an array of integers" );
  std::vector<int> out;
  for ( auto const& e : v )
  {
    if ( !e.is_number_integer() )
      throw parse_error( field_label( field ), "must be an array of integers" );
    out.push_back( e.get<int>() );
  }
  return out;
}

std::vector<uint32_t> get_id_array( json const& obj, std::string_view field )
{
  std::vector<uint32_t> out;
  for ( auto v : get_int_array( obj, field ) )
  {
    if ( v < 0 )
      throw parse_error( field_label( field ), "ids must be non-negative" );
    out.push_back( static_cast<uint32_t>( v ) );
  }
  return out;
}

radix get_radix( json const& obj, std::string_view field = "radix" )
{
  auto const n = get_int( obj, field );
  if ( n < 2 )
    throw parse_error( field_label( field ), "must be at least 2, got " + std::to_string( n ) );
  return radix( n );
}

truth_table table_from( json const& obj, radix r, int arity, std::string_view field, std::string name )
{
  auto entries = get_int_array( obj, field );
  try
  {
    return truth_table( r, arity, std::move( entries ), std::move( name ) );
  }
  catch ( parse_error const& )
  {
    throw;
  }
  catch ( error const& e )
  {
    throw parse_error( field_label( field ), e.what() );
  }
}

std::string dump( json const& doc )
{
  return doc.dump( 2 ) + "\n";
}

uint64_t fnv1a( std::string_view bytes )
{
  uint64_t h = 0xcbf29ce484222325ULL;
  for ( unsigned char c : bytes )
  {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json kind_json( signal_kind k )
{
  json j;
  j["kind"] = k.nary ? "nary" : "binary";
  if ( k.nary )
    j["radix"] = k.levels;
  return j;
}

} // namespace

/* truth tables */

std::string serialize_truth_table( truth_table const& tt )
{
  json doc;
  doc["format"] = "mvtlg-truth-table";
  doc["version"] = version;
  doc["radix"] = tt.base().n();
  doc["arity"] = tt.arity();
  doc["outputs"] = tt.entries();
  if ( !tt.name().empty() )
    doc["name"] = tt.name();
  return dump( doc );
}

truth_table parse_truth_table( std::string_view text )
{
  auto const doc = parse_document( text, "mvtlg-truth-table" );
  auto const r = get_radix( doc );
  auto const arity = get_int( doc, "arity" );
  if ( arity < 1 )
    throw parse_error( field_label( "arity" ), "must be at least 1, got " + std::to_string( arity ) );
  return table_from( doc, r, arity, "outputs", get_string( doc, "name" ) );
}

/* state machines */

std::string serialize_fsm( fsm_spec const& spec )
{
  json doc;
  doc["format"] = "mvtlg-fsm";
  doc["version"] = version;
  doc["radix"] = spec.base.n();
  doc["state_arity"] = spec.state_arity;
  doc["input_arity"] = spec.input_arity;
  doc["transition"] = json::array();
  for ( auto const& tt : spec.transition )
    doc["transition"].push_back( tt.entries() );
  doc["outputs"] = json::array();
  for ( auto const& tt : spec.outputs )
    doc["outputs"].push_back( tt.entries() );
  if ( !spec.name.empty() )
    doc["name"] = spec.name;
  return dump( doc );
}

fsm_spec parse_fsm( std::string_view text )
{
  auto const doc = parse_document( text, "mvtlg-fsm" );
  auto const r = get_radix( doc );
  fsm_spec spec{ r, get_int( doc, "state_arity" ), get_int( doc, "input_arity" ), {}, {}, get_string( doc, "name" ) };
  if ( spec.state_arity < 1 )
    throw parse_error( field_label( "state_arity" ), "must be at least 1" );
  if ( spec.input_arity < 0 )
    throw parse_error( field_label( "input_arity" ), "must be non-negative" );
  auto const arity = spec.state_arity + spec.input_arity;

  auto tables = [&]( std::string_view field, bool required ) {
    std::vector<truth_table> out;
    if ( !required && !doc.contains( field ) )
      return out;
    auto const& arr = require( doc, field );
    if ( !arr.is_array() )
      throw parse_error( field_label( field ), "must be an array of tables" );
    for ( std::size_t i = 0; i < arr.size(); ++i )
    {
      json wrapper;
      wrapper["t"] = arr[i];
      auto const label = std::string( field ) + "[" + std::to_string( i ) + "]";
      try
      {
        out.push_back( table_from( wrapper, r, arity, "t", {} ) );
      }
      catch ( parse_error const& e )
      {
        throw parse_error( field_label( label ), std::string( e.what() ).substr( e.where().size() + 2 ) );
      }
    }
    return out;
  };
  spec.transition = tables( "transition", true );
  spec.outputs = tables( "outputs", false );
  try
  {
    spec.validate();
  }
  catch ( error const& e )
  {
    throw parse_error( field_label( "transition" ), e.what() );
  }
  return spec;
}

/* netlists */

std::string fingerprint( netlist const& nl )
{
  std::ostringstream key;
  if ( auto const& f = nl.fabric() )
    key << to_string( f->kind ) << ':' << f->levels << ':' << f->arity << ';';
  key << nl.latch_order().size() << ';';
  for ( auto id : nl.latch_order() )
    key << id << ',';
  char buf[17];
  std::snprintf( buf, sizeof( buf ), "%016llx", static_cast<unsigned long long>( fnv1a( key.str() ) ) );
  return buf;
}

std::string serialize_netlist( netlist const& nl )
{
  json doc;
  doc["format"] = "mvtlg-netlist";
  doc["version"] = version;
  doc["type"] = nl.type_name();

  doc["nets"] = json::array();
  for ( auto const& n : nl.nets() )
  {
    auto j = kind_json( n.kind );
    j["id"] = n.id;
    if ( !n.name.empty() )
      j["name"] = n.name;
    doc["nets"].push_back( std::move( j ) );
  }

  doc["gates"] = json::array();
  for ( auto const& g : nl.gates() )
  {
    json j;
    j["id"] = g.id;
    j["kind"] = std::string( kind_name( g.kind ) );
    j["inputs"] = g.inputs;
    if ( g.output )
      j["output"] = *g.output;
    if ( auto const* t = std::get_if<tlg_gate>( &g.kind ) )
      j["threshold"] = t->threshold;
    else if ( auto const* a = std::get_if<and_gate>( &g.kind ) )
      j["fan_in"] = a->fan_in;
    else if ( auto const* o = std::get_if<or_gate>( &g.kind ) )
      j["fan_in"] = o->fan_in;
    else if ( auto const* inv = std::get_if<nary_inverter>( &g.kind ) )
      j["radix"] = inv->levels;
    else if ( auto const* l = std::get_if<nary_dlatch>( &g.kind ) )
    {
      j["radix"] = l->levels;
      j["register"] = l->reg;
    }
    else if ( auto const* c = std::get_if<const_gate>( &g.kind ) )
      j["value"] = c->value;
    else if ( auto const* in = std::get_if<input_port>( &g.kind ) )
      j["name"] = in->name;
    else if ( auto const* out = std::get_if<output_port>( &g.kind ) )
      j["name"] = out->name;
    doc["gates"].push_back( std::move( j ) );
  }

  doc["inputs"] = nl.inputs();
  doc["outputs"] = nl.outputs();
  doc["latch_order"] = nl.latch_order();
  doc["state_latches"] = nl.state_latches();
  doc["instances"] = json::array();
  for ( auto const& inst : nl.instances() )
    doc["instances"].push_back( { { "type", inst.type }, { "path", inst.path } } );
  if ( auto clk = nl.clock_input() )
    doc["clock_input"] = *clk;
  if ( auto const& f = nl.fabric() )
  {
    doc["fabric"] = { { "kind", std::string( to_string( f->kind ) ) }, { "radix", f->levels }, { "arity", f->arity } };
  }
  if ( !nl.latch_order().empty() )
    doc["fingerprint"] = fingerprint( nl );
  return dump( doc );
}

netlist parse_netlist( std::string_view text )
{
  auto const doc = parse_document( text, "mvtlg-netlist" );
  netlist_builder b( get_string( doc, "type" ) );

  auto const& nets = require( doc, "nets" );
  if ( !nets.is_array() )
    throw parse_error( field_label( "nets" ), "must be an array" );
  std::vector<signal_kind> kinds;
  for ( std::size_t i = 0; i < nets.size(); ++i )
  {
    auto const& n = nets[i];
    auto const label = "nets[" + std::to_string( i ) + "]";
    try
    {
      if ( get_int( n, "id" ) != static_cast<int>( i ) )
        throw parse_error( field_label( "id" ), "net ids must be 0, 1, 2, ... in order" );
      auto const kind = get_string( n, "kind" );
      signal_kind k;
      if ( kind == "binary" )
        k = signal_kind::binary();
      else if ( kind == "nary" )
        k = signal_kind::of( get_radix( n ) );
      else
        throw parse_error( field_label( "kind" ), "expected \"binary\" or \"nary\"" );
      kinds.push_back( k );
      b.add_net( k, get_string( n, "name" ) );
    }
    catch ( parse_error const& e )
    {
      throw parse_error( label + " " + e.where(), std::string( e.what() ).substr( e.where().size() + 2 ) );
    }
  }

  auto const& gates = require( doc, "gates" );
  if ( !gates.is_array() )
    throw parse_error( field_label( "gates" ), "must be an array" );
  for ( std::size_t i = 0; i < gates.size(); ++i )
  {
    auto const& g = gates[i];
    auto const label = "gates[" + std::to_string( i ) + "]";
    try
    {
      if ( get_int( g, "id" ) != static_cast<int>( i ) )
        throw parse_error( field_label( "id" ), "gate ids must be 0, 1, 2, ... in order" );
      auto const kind = get_string( g, "kind" );
      auto inputs = get_id_array( g, "inputs" );
      std::optional<net_id> output;
      if ( g.contains( "output" ) )
      {
        auto const o = get_int( g, "output" );
        if ( o < 0 || static_cast<std::size_t>( o ) >= kinds.size() )
          throw parse_error( field_label( "output" ), "unknown net " + std::to_string( o ) );
        output = static_cast<net_id>( o );
      }
      auto out_kind = [&]() {
        if ( !output )
          throw parse_error( field_label( "output" ), "missing" );
        return kinds[*output];
      };
      auto in_kind = [&]() {
        if ( inputs.size() != 1 || inputs[0] >= kinds.size() )
          throw parse_error( field_label( "inputs" ), "expected one known net" );
        return kinds[inputs[0]];
      };

      gate_kind k;
      if ( kind == "tlg" )
        k = tlg_gate{ get_int( g, "threshold" ) };
      else if ( kind == "and" )
        k = and_gate{ get_int( g, "fan_in" ) };
      else if ( kind == "or" )
        k = or_gate{ get_int( g, "fan_in" ) };
      else if ( kind == "not" )
        k = not_gate{};
      else if ( kind == "switch" )
        k = switch_gate{};
      else if ( kind == "nary_inverter" )
        k = nary_inverter{ get_radix( g ).n() };
      else if ( kind == "config_latch" )
        k = config_latch{};
      else if ( kind == "nary_dlatch" )
        k = nary_dlatch{ get_radix( g ).n(), get_int( g, "register" ) };
      else if ( kind == "const" )
        k = const_gate{ get_int( g, "value" ), out_kind() };
      else if ( kind == "input" )
        k = input_port{ get_string( g, "name" ), out_kind() };
      else if ( kind == "output" )
        k = output_port{ get_string( g, "name" ), in_kind() };
      else
        throw parse_error( field_label( "kind" ), "unknown gate kind \"" + kind + "\"" );
      b.add_gate( std::move( k ), std::move( inputs ), output );
    }
    catch ( parse_error const& e )
    {
      throw parse_error( label + " " + e.where(), std::string( e.what() ).substr( e.where().size() + 2 ) );
    }
  }

  b.set_order( get_id_array( doc, "inputs" ), get_id_array( doc, "outputs" ), get_id_array( doc, "latch_order" ), get_id_array( doc, "state_latches" ) );
  if ( doc.contains( "instances" ) )
  {
    for ( auto const& inst : doc["instances"] )
      b.record_instance( get_string( inst, "type" ), get_string( inst, "path" ) );
  }
  if ( doc.contains( "clock_input" ) )
  {
    auto const clk = get_int( doc, "clock_input" );
    if ( clk < 0 )
      throw parse_error( field_label( "clock_input" ), "must be non-negative" );
    b.set_clock_input( static_cast<std::size_t>( clk ) );
  }
  if ( doc.contains( "fabric" ) )
  {
    auto const& f = doc["fabric"];
    try
    {
      b.set_fabric( { parse_fabric_kind( get_string( f, "kind" ) ), get_radix( f ).n(), get_int( f, "arity" ) } );
    }
    catch ( parse_error const& )
    {
      throw;
    }
    catch ( error const& e )
    {
      throw parse_error( field_label( "fabric" ), e.what() );
    }
  }

  netlist nl = [&] {
    try
    {
      return std::move( b ).build();
    }
    catch ( parse_error const& )
    {
      throw;
    }
    catch ( error const& e )
    {
      throw parse_error( "netlist", e.what() );
    }
  }();

  if ( doc.contains( "fingerprint" ) && get_string( doc, "fingerprint" ) != fingerprint( nl ) )
    throw parse_error( field_label( "fingerprint" ), "does not match the netlist's configuration latches" );
  return nl;
}

/* bitstreams */

std::string serialize_bitstream( bitstream_file const& file )
{
  json doc;
  doc["format"] = "mvtlg-bitstream";
  doc["version"] = version;
  doc["fingerprint"] = file.fingerprint;
  std::string bits;
  bits.reserve( file.bits.size() );
  for ( auto b : file.bits.bits )
    bits.push_back( b ? '1' : '0' );
  doc["bits"] = bits;
  doc["length"] = file.bits.size();
  return dump( doc );
}

bitstream_file parse_bitstream( std::string_view text )
{
  auto const doc = parse_document( text, "mvtlg-bitstream" );
  bitstream_file file;
  file.fingerprint = get_string( doc, "fingerprint" );
  if ( file.fingerprint.empty() )
    throw parse_error( field_label( "fingerprint" ), "missing" );
  if ( !require( doc, "bits" ).is_string() )
    throw parse_error( field_label( "bits" ), "must be a string of 0/1 characters" );
  for ( char c : doc["bits"].get<std::string>() )
  {
    if ( c != '0' && c != '1' )
      throw parse_error( field_label( "bits" ), "must contain only 0 and 1" );
    file.bits.bits.push_back( c == '1' ? 1 : 0 );
  }
  if ( doc.contains( "length" ) && get_int( doc, "length" ) != static_cast<int>( file.bits.size() ) )
    throw parse_error( field_label( "length" ), "does not match the number of bits" );
  return file;
}

config_bitstream bitstream_for( netlist const& nl, bitstream_file const& file )
{
  if ( file.fingerprint != fingerprint( nl ) )
  {
    throw error( "bitstream fingerprint " + file.fingerprint + " does not match netlist fingerprint " + fingerprint( nl ) );
  }
  if ( file.bits.size() != nl.latch_order().size() )
  {
    throw error( "bitstream has " + std::to_string( file.bits.size() ) + " bits, netlist has " + std::to_string( nl.latch_order().size() ) + " configuration latches" );
  }
  return file.bits;
}

std::string read_text_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw error( "cannot open '" + path + "'" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file( std::string const& path, std::string_view text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw error( "cannot write '" + path + "'" );
  out << text;
  if ( !out )
    throw error( "failed writing '" + path + "'" );
}

} // namespace mvtlg
