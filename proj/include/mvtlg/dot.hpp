/*!
  \file dot.hpp
  \brief Graphviz export
*/

#pragma once

#include <mvtlg/netlist.hpp>

#include <string>

namespace mvtlg
{

/*! \brief One node per gate, one edge per (driver, consumer) pair of every net.

  TLG nodes are labeled with their threshold; configuration latches and
  storage cells get their own shapes. Output depends only on the netlist.
*/
std::string export_dot( netlist const& nl );

} // namespace mvtlg
