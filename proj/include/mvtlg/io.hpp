/*!
  \file io.hpp
  \brief Text formats for truth tables, state machines, netlists and bitstreams

  All documents are JSON objects with a "format" tag and "version": "1".
  Keys are emitted in sorted order so that serialize -> parse -> serialize
  is byte-stable.
*/

#pragma once

#include <mvtlg/netlist.hpp>
#include <mvtlg/types.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace mvtlg
{

/*! \brief Malformed document; `where` names the line or field at fault. */
class parse_error : public error
{
public:
  parse_error( std::string where, std::string const& what ) : error( where + ": " + what ), where_( std::move( where ) ) {}

  std::string const& where() const noexcept { return where_; }

private:
  std::string where_;
};

std::string serialize_truth_table( truth_table const& tt );
truth_table parse_truth_table( std::string_view text );

std::string serialize_fsm( fsm_spec const& spec );
fsm_spec parse_fsm( std::string_view text );

std::string serialize_netlist( netlist const& nl );
/*! \brief Parses and validates; rejects a stored fingerprint that does not match. */
netlist parse_netlist( std::string_view text );

/*! \brief 16 hex digits identifying a netlist's configuration latch layout. */
std::string fingerprint( netlist const& nl );

struct bitstream_file
{
  std::string fingerprint;
  config_bitstream bits;

  friend bool operator==( bitstream_file const&, bitstream_file const& ) = default;
};

std::string serialize_bitstream( bitstream_file const& file );
bitstream_file parse_bitstream( std::string_view text );

/*! \brief Checks that a bitstream file was made for `nl` and returns its bits. */
config_bitstream bitstream_for( netlist const& nl, bitstream_file const& file );

std::string read_text_file( std::string const& path );
void write_text_file( std::string const& path, std::string_view text );

} // namespace mvtlg
