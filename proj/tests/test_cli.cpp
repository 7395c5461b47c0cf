#include <doctest.h>

#include <mvtlg/io.hpp>
#include <mvtlg/oracle.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace mvtlg;

namespace
{

struct run_result
{
  int code;
  std::string out;
  std::string err;
};

class workspace
{
public:
  workspace()
  {
    dir_ = fs::temp_directory_path() / ( "mvtlg_cli_" + std::to_string( ::getpid() ) );
    fs::create_directories( dir_ );
  }
  ~workspace() { fs::remove_all( dir_ ); }

  std::string path( std::string const& name ) const { return ( dir_ / name ).string(); }

  void write( std::string const& name, std::string const& text ) const { write_text_file( path( name ), text ); }

  run_result run( std::string const& args ) const
  {
    auto const out = path( "stdout.txt" ), err = path( "stderr.txt" );
    auto const cmd = std::string( MVTLG_CLI ) + " " + args + " > " + out + " 2> " + err;
    auto const status = std::system( cmd.c_str() );
    int code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
    return { code, read_text_file( out ), read_text_file( err ) };
  }

private:
  fs::path dir_;
};

std::vector<std::string> lines( std::string const& text )
{
  std::vector<std::string> out;
  std::istringstream in( text );
  for ( std::string l; std::getline( in, l ); )
    out.push_back( l );
  return out;
}

} // namespace

TEST_CASE( "command line: synthesis, verification and simulation" )
{
  workspace ws;
  auto const [sum, carry] = reference_half_adder( radix( 3 ) );
  ws.write( "sum.json", serialize_truth_table( sum ) );
  ws.write( "carry.json", serialize_truth_table( carry ) );

  auto const synth = ws.run( "synth " + ws.path( "sum.json" ) + " --strategy decoder -o " + ws.path( "sum.net" ) );
  CHECK( synth.code == 0 );
  CHECK( synth.out.find( "tlg: 4" ) != std::string::npos );

  auto const verify = ws.run( "verify " + ws.path( "sum.net" ) + " " + ws.path( "sum.json" ) );
  CHECK( verify.code == 0 );
  CHECK( lines( verify.out ).front() == "9/9 vectors, PASS" );

  CHECK( ws.run( "synth " + ws.path( "sum.json" ) + " " + ws.path( "carry.json" ) + " --strategy mux -o " + ws.path( "ha.net" ) ).code == 0 );
  auto const sim = ws.run( "sim " + ws.path( "ha.net" ) + " --input 1,2 --input 0,0" );
  CHECK( sim.code == 0 );
  CHECK( lines( sim.out ) == std::vector<std::string>{ "0 1", "0 0" } );

  ws.write( "vectors.txt", "# x1 x0\n2,2\n\n2 1\n" );
  auto const from_file = ws.run( "sim " + ws.path( "ha.net" ) + " --inputs-file " + ws.path( "vectors.txt" ) );
  CHECK( lines( from_file.out ) == std::vector<std::string>{ "1 1", "0 1" } );

  truth_table zero( radix( 3 ), 1, { 0, 0, 0 } );
  ws.write( "zero.json", serialize_truth_table( zero ) );
  auto const mux = ws.run( "synth " + ws.path( "zero.json" ) + " --strategy mux -o " + ws.path( "zero.net" ) );
  CHECK( mux.out.find( "or: 0" ) != std::string::npos );

  // arity mismatch between netlist and table
  CHECK( ws.run( "verify " + ws.path( "sum.net" ) + " " + ws.path( "zero.json" ) ).code == 2 );
  auto const stats = ws.run( "stats " + ws.path( "sum.net" ) );
  CHECK( stats.code == 0 );
  CHECK( stats.out.find( "switch: 3" ) != std::string::npos );
  auto const dot = ws.run( "export-dot " + ws.path( "sum.net" ) );
  CHECK( dot.out.rfind( "digraph", 0 ) == 0 );
}

TEST_CASE( "command line: fabrics and bitstreams" )
{
  workspace ws;
  auto const [sum, carry] = reference_half_adder( radix( 3 ) );
  ws.write( "sum.json", serialize_truth_table( sum ) );
  ws.write( "carry.json", serialize_truth_table( carry ) );
  ws.write( "quad.json", serialize_truth_table( truth_table( radix( 4 ), 2, std::vector<int>( 16, 1 ) ) ) );

  auto const fab = ws.run( "fabric --radix 3 --arity 2 --kind decoder -o " + ws.path( "dec.net" ) );
  CHECK( fab.code == 0 );
  CHECK( fab.out.find( "configuration latches: 27" ) != std::string::npos );
  CHECK( ws.run( "fabric --radix 2 --arity 1 --kind mux -o " + ws.path( "m.net" ) ).out.find( "configuration latches: 4" ) != std::string::npos );
  CHECK( ws.run( "fabric --radix 3 --arity 0 -o " + ws.path( "x.net" ) ).code == 2 );

  auto const conf = ws.run( "configure " + ws.path( "dec.net" ) + " " + ws.path( "carry.json" ) + " -o " + ws.path( "carry.bits" ) );
  CHECK( conf.code == 0 );
  auto const file = parse_bitstream( read_text_file( ws.path( "carry.bits" ) ) );
  CHECK( file.bits.size() == 27 );
  CHECK( file.bits.count_ones() == 9 );
  CHECK( ws.run( "configure " + ws.path( "dec.net" ) + " " + ws.path( "quad.json" ) + " -o " + ws.path( "q.bits" ) ).code == 2 );

  CHECK( ws.run( "verify " + ws.path( "dec.net" ) + " " + ws.path( "carry.json" ) + " --bitstream " + ws.path( "carry.bits" ) ).code == 0 );
  CHECK( ws.run( "verify " + ws.path( "dec.net" ) + " " + ws.path( "carry.json" ) ).code == 2 );

  // one flipped bit: decoder output 5 now also claims level 0
  auto bad = file;
  bad.bits.bits[5] ^= 1;
  ws.write( "bad.bits", serialize_bitstream( bad ) );
  auto const fail = ws.run( "verify " + ws.path( "dec.net" ) + " " + ws.path( "carry.json" ) + " --bitstream " + ws.path( "bad.bits" ) );
  CHECK( fail.code == 1 );
  CHECK( fail.out.find( "FAIL" ) != std::string::npos );
  CHECK( fail.out.find( "input (1,2)" ) != std::string::npos );

  // a bitstream for another fabric is refused
  CHECK( ws.run( "fabric --radix 3 --arity 2 --kind mux -o " + ws.path( "mux.net" ) ).code == 0 );
  auto const refused = ws.run( "sim " + ws.path( "mux.net" ) + " --bitstream " + ws.path( "carry.bits" ) + " --input 1,2" );
  CHECK( refused.code == 2 );
  CHECK( refused.err.find( "fingerprint" ) != std::string::npos );

  auto const ok = ws.run( "sim " + ws.path( "dec.net" ) + " --bitstream " + ws.path( "carry.bits" ) + " --input 1,2 --input 0,1" );
  CHECK( lines( ok.out ) == std::vector<std::string>{ "1", "0" } );
}

TEST_CASE( "command line: state machines" )
{
  workspace ws;
  auto const r3 = radix( 3 );
  ws.write( "ctr.json", serialize_fsm( fsm_spec{ r3, 1, 0, { truth_table( r3, 1, { 1, 2, 0 } ) }, {}, "counter" } ) );
  ws.write( "acc.json", serialize_fsm( fsm_spec{ r3, 1, 1, { reference_half_adder( r3 ).first }, {}, "acc" } ) );

  CHECK( ws.run( "fsm " + ws.path( "ctr.json" ) + " --strategy mux -o " + ws.path( "ctr.net" ) ).code == 0 );
  auto const steps = ws.run( "sim " + ws.path( "ctr.net" ) + " --steps 5 --reset 0" );
  CHECK( steps.code == 0 );
  CHECK( lines( steps.out ) == std::vector<std::string>{ "1", "2", "0", "1", "2" } );

  auto const missing = ws.run( "sim " + ws.path( "ctr.net" ) + " --steps 5" );
  CHECK( missing.code == 2 );
  CHECK( missing.err.find( "--reset" ) != std::string::npos );

  CHECK( ws.run( "fsm " + ws.path( "acc.json" ) + " -o " + ws.path( "acc.net" ) ).code == 0 );
  auto const acc = ws.run( "sim " + ws.path( "acc.net" ) + " --reset 0 --input 1 --input 2 --input 2" );
  CHECK( lines( acc.out ) == std::vector<std::string>{ "1", "0", "2" } );
}

TEST_CASE( "command line: usage and validation errors" )
{
  workspace ws;
  ws.write( "bad.json", "{\"format\": \"mvtlg-truth-table\", \"version\": \"1\", \"radix\": 1, \"arity\": 1, \"outputs\": [0]}" );
  auto const bad = ws.run( "synth " + ws.path( "bad.json" ) + " -o " + ws.path( "x.net" ) );
  CHECK( bad.code == 2 );
  CHECK( bad.err.find( "radix" ) != std::string::npos );

  ws.write( "broken.json", "{\n  \"format\": \"mvtlg-truth-table\",\n  \"version\": \"1\"\n  \"radix\": 3\n}" );
  auto const broken = ws.run( "synth " + ws.path( "broken.json" ) + " -o " + ws.path( "x.net" ) );
  CHECK( broken.code == 2 );
  CHECK( broken.err.find( "line 4" ) != std::string::npos );

  CHECK( ws.run( "" ).code == 2 );
  CHECK( ws.run( "frobnicate" ).code == 2 );
  CHECK( ws.run( "synth --strategy lut " + ws.path( "bad.json" ) + " -o x" ).code == 2 );
  CHECK( ws.run( "--help" ).code == 0 );
  CHECK( ws.run( "stats " + ws.path( "missing.net" ) ).code == 2 );
}
