#include <mvtlg/dot.hpp>

#include <sstream>

namespace mvtlg
{

namespace
{

std::string escape( std::string const& s )
{
  std::string out;
  for ( char c : s )
  {
    if ( c == '"' || c == '\\' )
      out.push_back( '\\' );
    out.push_back( c );
  }
  return out;
}

std::string label_of( gate const& g )
{
  return std::visit(
      []( auto const& k ) -> std::string {
        using T = std::decay_t<decltype( k )>;
        if constexpr ( std::is_same_v<T, tlg_gate> )
          return "TLG t=" + std::to_string( k.threshold );
        else if constexpr ( std::is_same_v<T, and_gate> )
          return "AND";
        else if constexpr ( std::is_same_v<T, or_gate> )
          return "OR";
        else if constexpr ( std::is_same_v<T, not_gate> )
          return "NOT";
        else if constexpr ( std::is_same_v<T, switch_gate> )
          return "SW";
        else if constexpr ( std::is_same_v<T, nary_inverter> )
          return "INV";
        else if constexpr ( std::is_same_v<T, config_latch> )
          return "CFG";
        else if constexpr ( std::is_same_v<T, nary_dlatch> )
          return "LATCH r" + std::to_string( k.reg );
        else if constexpr ( std::is_same_v<T, const_gate> )
          return "CONST " + std::to_string( k.value );
        else
          return k.name;
      },
      g.kind );
}

char const* shape_of( gate const& g )
{
  if ( std::holds_alternative<config_latch>( g.kind ) )
    return "box3d";
  if ( std::holds_alternative<nary_dlatch>( g.kind ) )
    return "component";
  if ( std::holds_alternative<input_port>( g.kind ) )
    return "invtriangle";
  if ( std::holds_alternative<output_port>( g.kind ) )
    return "triangle";
  if ( std::holds_alternative<const_gate>( g.kind ) )
    return "plaintext";
  if ( std::holds_alternative<switch_gate>( g.kind ) )
    return "diamond";
  return "ellipse";
}

} // namespace

std::string export_dot( netlist const& nl )
{
  std::ostringstream os;
  os << "digraph \"" << escape( nl.type_name().empty() ? "netlist" : nl.type_name() ) << "\" {\n";
  os << "  rankdir=LR;\n";
  for ( auto const& g : nl.gates() )
  {
    os << "  g" << g.id << " [label=\"" << escape( label_of( g ) ) << "\", shape=" << shape_of( g ) << "];\n";
  }
  auto const drivers = nl.drivers();
  for ( auto const& g : nl.gates() )
  {
    for ( std::size_t pin = 0; pin < g.inputs.size(); ++pin )
    {
      auto const n = g.inputs[pin];
      for ( auto d : drivers[n] )
      {
        os << "  g" << d << " -> g" << g.id;
        auto const& name = nl.net_at( n ).name;
        if ( !name.empty() )
          os << " [label=\"" << escape( name ) << "\"]";
        os << ";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace mvtlg
