// Command-line front end: synthesis, fabrics, configuration, verification and simulation.
//
// Exit status: 0 success / pass, 1 verification failure or simulation fault,
// 2 usage or validation error.

#include <mvtlg/dot.hpp>
#include <mvtlg/io.hpp>
#include <mvtlg/oracle.hpp>
#include <mvtlg/sim.hpp>
#include <mvtlg/synth.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace mvtlg;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

/* thrown for command-line problems the parser itself cannot see */
struct usage_error : error
{
  using error::error;
};

std::vector<int> parse_vector( std::string const& text, std::string const& flag )
{
  std::vector<int> out;
  std::string token;
  std::istringstream in( text );
  while ( std::getline( in, token, ',' ) )
  {
    std::istringstream words( token );
    std::string word;
    while ( words >> word )
    {
      std::size_t used = 0;
      int v = 0;
      try
      {
        v = std::stoi( word, &used );
      }
      catch ( std::exception const& )
      {
        used = 0;
      }
      if ( used != word.size() )
        throw usage_error( flag + ": '" + text + "' is not a list of integers" );
      out.push_back( v );
    }
  }
  return out;
}

std::string join( std::vector<int> const& v, char const* sep = " " )
{
  std::string s;
  for ( std::size_t i = 0; i < v.size(); ++i )
  {
    if ( i )
      s += sep;
    s += std::to_string( v[i] );
  }
  return s;
}

void print_stats( netlist const& nl )
{
  auto const st = compute_gate_stats( nl );
  for ( auto const* k : { "tlg", "and", "or", "not", "switch", "nary_inverter", "config_latch", "nary_dlatch" } )
    std::cout << k << ": " << st.kind( k ) << "\n";
  for ( auto const& [type, count] : st.per_instance )
    std::cout << "instance " << type << ": " << count << "\n";
}

std::vector<truth_table> read_tables( std::vector<std::string> const& paths )
{
  std::vector<truth_table> tables;
  for ( auto const& p : paths )
  {
    try
    {
      tables.push_back( parse_truth_table( read_text_file( p ) ) );
    }
    catch ( parse_error const& e )
    {
      throw parse_error( p + ": " + e.where(), std::string( e.what() ).substr( e.where().size() + 2 ) );
    }
  }
  return tables;
}

netlist read_netlist( std::string const& path )
{
  try
  {
    return parse_netlist( read_text_file( path ) );
  }
  catch ( parse_error const& e )
  {
    throw parse_error( path + ": " + e.where(), std::string( e.what() ).substr( e.where().size() + 2 ) );
  }
}

void emit( std::string const& path, std::string const& text )
{
  if ( path.empty() )
    std::cout << text;
  else
    write_text_file( path, text );
}

struct options
{
  std::vector<std::string> files;
  std::string strategy{ "decoder" };
  std::string kind{ "decoder" };
  std::string output;
  std::string bitstream;
  std::string reset;
  std::string inputs_file;
  std::vector<std::string> inputs;
  int radix{ 0 };
  int arity{ 0 };
  int steps{ 0 };
  uint64_t seed{ equivalence_options{}.seed };
  uint64_t exhaustive_cap{ equivalence_options{}.exhaustive_cap };
};

int run_synth( options const& o )
{
  auto const tables = read_tables( o.files );
  auto const nl = synthesize( tables, parse_strategy( o.strategy ) );
  emit( o.output, serialize_netlist( nl ) );
  print_stats( nl );
  return exit_ok;
}

int run_fabric( options const& o )
{
  if ( o.radix < 2 )
    throw usage_error( "--radix must be at least 2" );
  if ( o.arity < 1 )
    throw usage_error( "--arity must be at least 1" );
  auto const nl = build_fabric( parse_fabric_kind( o.kind ), radix( o.radix ), o.arity );
  emit( o.output, serialize_netlist( nl ) );
  std::cout << "configuration latches: " << nl.latch_order().size() << "\nfingerprint: " << fingerprint( nl ) << "\n";
  return exit_ok;
}

int run_configure( options const& o )
{
  if ( o.files.size() != 2 )
    throw usage_error( "configure expects a fabric netlist and a table file" );
  auto const nl = read_netlist( o.files[0] );
  if ( !nl.fabric() )
    throw usage_error( o.files[0] + " is not a fabric (no fabric description or fingerprint)" );
  auto const tables = read_tables( { o.files[1] } );
  bitstream_file file{ fingerprint( nl ), derive_config( tables.front(), nl ) };
  emit( o.output, serialize_bitstream( file ) );
  std::cout << file.bits.size() << " bits, " << file.bits.count_ones() << " ones\n";
  return exit_ok;
}

std::optional<config_bitstream> read_config( netlist const& nl, std::string const& path )
{
  if ( path.empty() )
  {
    if ( !nl.latch_order().empty() )
      throw usage_error( "netlist has configuration latches; pass --bitstream" );
    return std::nullopt;
  }
  return bitstream_for( nl, parse_bitstream( read_text_file( path ) ) );
}

int run_verify( options const& o )
{
  if ( o.files.size() < 2 )
    throw usage_error( "verify expects a netlist and at least one table file" );
  auto const nl = read_netlist( o.files[0] );
  auto const tables = read_tables( { o.files.begin() + 1, o.files.end() } );
  auto const config = read_config( nl, o.bitstream );

  equivalence_options opts;
  opts.seed = o.seed;
  opts.exhaustive_cap = o.exhaustive_cap;
  auto const rep = check_equivalence( nl, tables, config, opts );

  std::cout << rep.total_vectors - rep.mismatch_count << "/" << rep.total_vectors << " vectors, " << ( rep.passed() ? "PASS" : "FAIL" );
  if ( !rep.exhaustive )
    std::cout << " (sampled " << rep.total_vectors << " of " << rep.space_size << ", seed " << rep.seed << ")";
  std::cout << "\n";
  for ( auto const& m : rep.mismatches )
  {
    std::cout << "  input (" << join( m.inputs, "," ) << "): expected " << join( m.expected );
    if ( m.fault.empty() )
      std::cout << ", got " << join( m.got ) << "\n";
    else
      std::cout << ", fault " << m.fault << "\n";
  }
  if ( rep.mismatch_count > rep.mismatches.size() )
    std::cout << "  ... " << rep.mismatch_count - rep.mismatches.size() << " more\n";
  return rep.passed() ? exit_ok : exit_fail;
}

int run_fsm( options const& o )
{
  if ( o.files.size() != 1 )
    throw usage_error( "fsm expects one machine file" );
  auto const spec = parse_fsm( read_text_file( o.files[0] ) );
  auto const nl = compile_fsm( spec, parse_strategy( o.strategy ) );
  emit( o.output, serialize_netlist( nl ) );
  print_stats( nl );
  return exit_ok;
}

int run_sim( options const& o )
{
  if ( o.files.size() != 1 )
    throw usage_error( "sim expects one netlist" );
  auto const nl = read_netlist( o.files[0] );
  auto const config = read_config( nl, o.bitstream );

  std::vector<std::vector<int>> vectors;
  for ( auto const& s : o.inputs )
    vectors.push_back( parse_vector( s, "--input" ) );
  if ( !o.inputs_file.empty() )
  {
    std::istringstream in( read_text_file( o.inputs_file ) );
    std::string line;
    while ( std::getline( in, line ) )
    {
      auto const hash = line.find( '#' );
      if ( hash != std::string::npos )
        line.erase( hash );
      if ( line.find_first_not_of( " \t\r" ) == std::string::npos )
        continue;
      vectors.push_back( parse_vector( line, "--inputs-file" ) );
    }
  }

  simulator sim( nl );
  auto state = sim.initial_state();
  if ( config )
    sim.load_config( *config, state );

  if ( nl.is_sequential() )
  {
    if ( o.reset.empty() )
      throw usage_error( "sequential netlist needs --reset (one value per register)" );
    sim.reset( parse_vector( o.reset, "--reset" ), state );
    if ( o.steps > 0 )
    {
      if ( vectors.empty() )
        vectors.emplace_back();
      std::vector<std::vector<int>> cycled;
      for ( int t = 0; t < o.steps; ++t )
        cycled.push_back( vectors[static_cast<std::size_t>( t ) % vectors.size()] );
      vectors = std::move( cycled );
    }
  }
  if ( vectors.empty() )
    throw usage_error( "nothing to simulate; pass --input, --inputs-file or --steps" );

  for ( auto const& v : vectors )
  {
    try
    {
      auto const out = nl.is_sequential() ? sim.step( v, state ) : sim.eval( v, state );
      std::cout << join( out ) << "\n";
    }
    catch ( fault_error const& e )
    {
      std::cout << "fault: " << e.what() << "\n";
      return exit_fail;
    }
  }
  return exit_ok;
}

int run_stats( options const& o )
{
  if ( o.files.size() != 1 )
    throw usage_error( "stats expects one netlist" );
  print_stats( read_netlist( o.files[0] ) );
  return exit_ok;
}

int run_dot( options const& o )
{
  if ( o.files.size() != 1 )
    throw usage_error( "export-dot expects one netlist" );
  emit( o.output, export_dot( read_netlist( o.files[0] ) ) );
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Multiple-valued threshold-logic synthesis and simulation" };
  app.require_subcommand( 1 );
  options o;

  auto strategy_check = CLI::IsMember( { "decoder", "mux", "mux-flat" } );

  auto* synth = app.add_subcommand( "synth", "Synthesize truth tables into a netlist" );
  synth->add_option( "tables", o.files, "Truth table files (one output each)" )->required();
  synth->add_option( "--strategy", o.strategy, "decoder, mux or mux-flat" )->check( strategy_check );
  synth->add_option( "-o,--output", o.output, "Netlist output path" )->required();

  auto* fabric = app.add_subcommand( "fabric", "Build a reconfigurable fabric" );
  fabric->add_option( "--radix", o.radix, "Number of levels" )->required();
  fabric->add_option( "--arity", o.arity, "Number of inputs" )->required();
  fabric->add_option( "--kind", o.kind, "decoder, mux or mux-flat" )->check( strategy_check );
  fabric->add_option( "-o,--output", o.output, "Netlist output path" )->required();

  auto* configure = app.add_subcommand( "configure", "Derive a bitstream for a fabric" );
  configure->add_option( "files", o.files, "Fabric netlist, then truth table" )->required();
  configure->add_option( "-o,--output", o.output, "Bitstream output path" )->required();

  auto* verify = app.add_subcommand( "verify", "Check a netlist against truth tables" );
  verify->add_option( "files", o.files, "Netlist, then one table per output" )->required();
  verify->add_option( "--bitstream", o.bitstream, "Configuration for a fabric netlist" );
  verify->add_option( "--seed", o.seed, "Seed for sampled checks" );
  verify->add_option( "--exhaustive-cap", o.exhaustive_cap, "Largest input space checked exhaustively" );

  auto* fsm = app.add_subcommand( "fsm", "Compile a state machine" );
  fsm->add_option( "spec", o.files, "State machine file" )->required();
  fsm->add_option( "--strategy", o.strategy, "decoder, mux or mux-flat" )->check( strategy_check );
  fsm->add_option( "-o,--output", o.output, "Netlist output path" )->required();

  auto* sim = app.add_subcommand( "sim", "Simulate a netlist" );
  sim->add_option( "netlist", o.files, "Netlist file" )->required();
  sim->add_option( "--input", o.inputs, "Input vector such as 1,2 (repeatable; clock excluded)" );
  sim->add_option( "--inputs-file", o.inputs_file, "One input vector per line" );
  sim->add_option( "--bitstream", o.bitstream, "Configuration for a fabric netlist" );
  sim->add_option( "--reset", o.reset, "Register values after reset, such as 0 or 0,1" );
  sim->add_option( "--steps", o.steps, "Clock steps (input vectors are repeated cyclically)" );

  auto* stats = app.add_subcommand( "stats", "Print gate counts" );
  stats->add_option( "netlist", o.files, "Netlist file" )->required();

  auto* dot = app.add_subcommand( "export-dot", "Write a Graphviz description" );
  dot->add_option( "netlist", o.files, "Netlist file" )->required();
  dot->add_option( "-o,--output", o.output, "Output path" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if ( synth->parsed() )
      return run_synth( o );
    if ( fabric->parsed() )
      return run_fabric( o );
    if ( configure->parsed() )
      return run_configure( o );
    if ( verify->parsed() )
      return run_verify( o );
    if ( fsm->parsed() )
      return run_fsm( o );
    if ( sim->parsed() )
      return run_sim( o );
    if ( stats->parsed() )
      return run_stats( o );
    if ( dot->parsed() )
      return run_dot( o );
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
