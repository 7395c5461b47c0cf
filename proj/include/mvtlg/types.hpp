/*!
  \file types.hpp
  \brief Value system and description types for radix-N logic

  Logic levels are abstract integers 0..N-1. Multi-digit inputs are always
  given most-significant digit first, i.e. (x_{M-1}, ..., x_1, x_0), and
  are mapped to a table index k = sum_j N^j x_j.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvtlg
{

/*! \brief Base error for all validation and usage failures. */
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Number of logic levels N, N >= 2. */
class radix
{
public:
  explicit radix( int n );

  int n() const noexcept { return n_; }
  int max_level() const noexcept { return n_ - 1; }

  friend bool operator==( radix, radix ) = default;

private:
  int n_;
};

/*! \brief A logic level 0..N-1 tagged with its radix. */
class mv_value
{
public:
  mv_value( int value, radix r );

  int value() const noexcept { return value_; }
  radix base() const noexcept { return radix_; }

  friend bool operator==( mv_value const&, mv_value const& ) = default;

private:
  int value_;
  radix radix_;
};

/*! \brief Reflects a level around the middle of its range: d -> N-1-d. */
mv_value nary_invert( mv_value v );

/*! \brief Positional index of a most-significant-first digit tuple.

  Throws if the digits do not share `r` or the tuple is empty.
*/
uint64_t tt_index( std::span<mv_value const> digits, radix r );

/*! \brief Same as above on raw levels; every digit must lie in 0..N-1. */
uint64_t tt_index( std::span<int const> digits, radix r );

/*! \brief Inverse of `tt_index`: the `arity` digits of `index`, most-significant first. */
std::vector<int> index_digits( uint64_t index, radix r, int arity );

/*! \brief N^M with an overflow guard. */
uint64_t table_size( radix r, int arity );

/*! \brief Dense single-output function of `arity` radix-N inputs. */
class truth_table
{
public:
  truth_table( radix r, int arity, std::vector<int> entries, std::string name = {} );

  /*! \brief Builds a table by evaluating `fn` on every digit tuple (most-significant first). */
  template<typename Fn>
  static truth_table from_function( radix r, int arity, Fn&& fn, std::string name = {} )
  {
    auto const size = table_size( r, arity );
    std::vector<int> entries( size );
    for ( uint64_t k = 0; k < size; ++k )
    {
      entries[k] = fn( index_digits( k, r, arity ) );
    }
    return truth_table( r, arity, std::move( entries ), std::move( name ) );
  }

  /*! \brief Uniformly random entries. */
  static truth_table random( radix r, int arity, std::mt19937_64& rng );

  radix base() const noexcept { return radix_; }
  int arity() const noexcept { return arity_; }
  uint64_t size() const noexcept { return entries_.size(); }
  std::vector<int> const& entries() const noexcept { return entries_; }
  int operator[]( uint64_t k ) const { return entries_.at( k ); }
  std::string const& name() const noexcept { return name_; }

  friend bool operator==( truth_table const&, truth_table const& ) = default;

private:
  radix radix_;
  int arity_;
  std::vector<int> entries_;
  std::string name_;
};

/*! \brief Next-state (and optional output) tables of a radix-N state machine.

  Table inputs are the state digits followed by the input digits, both most
  significant first. `transition[p]` computes the next value of state digit
  `p` (position 0 is the most significant state digit). Output tables are
  evaluated on the post-transition state and the current input.
*/
struct fsm_spec
{
  radix base;
  int state_arity;
  int input_arity;
  std::vector<truth_table> transition;
  std::vector<truth_table> outputs;
  std::string name;

  /*! \brief Throws on arity or radix mismatches between the tables. */
  void validate() const;
};

/*! \brief Configuration latch values in the fabric's latch order. */
struct config_bitstream
{
  std::vector<uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t count_ones() const noexcept;

  friend bool operator==( config_bitstream const&, config_bitstream const& ) = default;
};

} // namespace mvtlg
