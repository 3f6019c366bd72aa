/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file benchmarks.hpp
  \brief Arithmetic identity miters with seeded fault injection

  Each benchmark checks an arithmetic identity over w-bit words modulo 2^w:
  associativity of addition, associativity of multiplication, or
  distributivity of multiplication over addition.  Both sides are built as
  a network over the shared inputs a, b, c (least significant bit first,
  inputs ordered a0..a{w-1} b0..b{w-1} c0..c{w-1}), compared bitwise, and
  reduced to a single output that fires exactly on a mismatch.  The fault-
  free miter is constant false; injected faults complement the result of a
  chosen gate on the arithmetic sides, which makes the output a nontrivial
  function worth compiling.

  Fault positions count gate constructions, not network nodes, so a
  position stays meaningful even when structural folding elides the gate.
  A first pass with faults disabled counts the positions; the seeded
  pseudo-random generator then picks distinct positions among them.
*/

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "xag.hpp"

namespace qoracle
{

/*! \brief Deterministic 64-bit stream for seed-driven choices. */
struct splitmix64_rng
{
  uint64_t state{0u};

  uint64_t next()
  {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
    return z ^ ( z >> 31 );
  }
};

/*! \brief Gate factory that complements the results at chosen positions. */
class fault_injector
{
public:
  explicit fault_injector( xag_network& xag,
                           std::vector<int64_t> fault_positions = {} )
      : xag_( xag ), faults_( std::move( fault_positions ) )
  {
    std::sort( faults_.begin(), faults_.end() );
  }

  uint32_t create_and( uint32_t a, uint32_t b )
  {
    return place( xag_.create_and( a, b ) );
  }

  uint32_t create_xor( uint32_t a, uint32_t b )
  {
    return place( xag_.create_xor( a, b ) );
  }

  /*! \brief Number of fault positions passed so far. */
  int64_t positions() const { return counter_; }

private:
  uint32_t place( uint32_t literal )
  {
    bool const hit =
        std::binary_search( faults_.begin(), faults_.end(), counter_ );
    ++counter_;
    return hit ? literal ^ 1u : literal;
  }

  xag_network& xag_;
  std::vector<int64_t> faults_;
  int64_t counter_{0};
};

/*! \brief Ripple-carry addition modulo 2^w, least significant bit first. */
template<class Factory>
std::vector<uint32_t> build_truncated_adder( Factory& factory,
                                             std::vector<uint32_t> const& a,
                                             std::vector<uint32_t> const& b )
{
  assert( a.size() == b.size() );
  auto const width = a.size();
  std::vector<uint32_t> sum( width );
  uint32_t carry = 0u;
  for ( size_t i = 0u; i < width; ++i )
  {
    uint32_t const t = factory.create_xor( a[i], b[i] );
    sum[i] = factory.create_xor( t, carry );
    if ( i + 1u < width )
    {
      uint32_t const g = factory.create_and( a[i], b[i] );
      uint32_t const u = factory.create_and( t, carry );
      carry = factory.create_xor( g, u );
    }
  }
  return sum;
}

/*! \brief Shift-and-add multiplication modulo 2^w. */
template<class Factory>
std::vector<uint32_t> build_truncated_multiplier(
    Factory& factory, std::vector<uint32_t> const& a,
    std::vector<uint32_t> const& b )
{
  assert( a.size() == b.size() );
  auto const width = a.size();
  std::vector<uint32_t> product( width );
  for ( size_t j = 0u; j < width; ++j )
  {
    product[j] = factory.create_and( a[0], b[j] );
  }
  for ( size_t i = 1u; i < width; ++i )
  {
    std::vector<uint32_t> high( product.begin() + i, product.end() );
    std::vector<uint32_t> row( width - i );
    for ( size_t j = 0u; j + i < width; ++j )
    {
      row[j] = factory.create_and( a[i], b[j] );
    }
    auto const shifted = build_truncated_adder( factory, high, row );
    std::copy( shifted.begin(), shifted.end(), product.begin() + i );
  }
  return product;
}

enum class miter_family
{
  add_associativity,
  mult_associativity,
  mult_distributivity
};

inline std::string family_name( miter_family family )
{
  switch ( family )
  {
  case miter_family::add_associativity:
    return "add-assoc";
  case miter_family::mult_associativity:
    return "mult-assoc";
  default:
    return "mult-distr";
  }
}

inline miter_family family_from_name( std::string const& name )
{
  if ( name == "add-assoc" )
  {
    return miter_family::add_associativity;
  }
  if ( name == "mult-assoc" )
  {
    return miter_family::mult_associativity;
  }
  if ( name == "mult-distr" )
  {
    return miter_family::mult_distributivity;
  }
  throw std::invalid_argument( "unknown miter family: " + name );
}

struct miter_spec
{
  miter_family family{miter_family::add_associativity};
  uint32_t width{2u};
  uint32_t num_faults{0u};
  uint64_t seed{1u};
};

namespace detail
{

template<class Factory>
std::pair<std::vector<uint32_t>, std::vector<uint32_t>> build_miter_sides(
    Factory& factory, miter_family family, std::vector<uint32_t> const& a,
    std::vector<uint32_t> const& b, std::vector<uint32_t> const& c )
{
  switch ( family )
  {
  case miter_family::add_associativity:
    return {build_truncated_adder( factory, build_truncated_adder( factory, a, b ), c ),
            build_truncated_adder( factory, a, build_truncated_adder( factory, b, c ) )};
  case miter_family::mult_associativity:
    return {build_truncated_multiplier(
                factory, build_truncated_multiplier( factory, a, b ), c ),
            build_truncated_multiplier(
                factory, a, build_truncated_multiplier( factory, b, c ) )};
  default:
    return {build_truncated_multiplier( factory, a,
                                        build_truncated_adder( factory, b, c ) ),
            build_truncated_adder(
                factory, build_truncated_multiplier( factory, a, b ),
                build_truncated_multiplier( factory, a, c ) )};
  }
}

} // namespace detail

/*! \brief Builds the miter network; a fault-free miter is constant false. */
inline xag_network build_miter( miter_spec const& spec )
{
  assert( spec.width >= 1u && spec.width <= 16u );

  auto const build = [&]( std::vector<int64_t> const& faults,
                          int64_t* positions ) {
    xag_network xag;
    std::vector<uint32_t> a( spec.width ), b( spec.width ), c( spec.width );
    for ( uint32_t i = 0u; i < spec.width; ++i )
    {
      a[i] = xag.create_input( fmt::format( "a{}", i ) );
    }
    for ( uint32_t i = 0u; i < spec.width; ++i )
    {
      b[i] = xag.create_input( fmt::format( "b{}", i ) );
    }
    for ( uint32_t i = 0u; i < spec.width; ++i )
    {
      c[i] = xag.create_input( fmt::format( "c{}", i ) );
    }

    fault_injector factory( xag, faults );
    auto const [lhs, rhs] = detail::build_miter_sides( factory, spec.family, a, b, c );
    if ( positions != nullptr )
    {
      *positions = factory.positions();
    }

    /* the comparator stays fault free */
    uint32_t all_equal = 1u;
    for ( uint32_t i = 0u; i < spec.width; ++i )
    {
      uint32_t const differ = xag.create_xor( lhs[i], rhs[i] );
      all_equal = xag.create_and( all_equal, differ ^ 1u );
    }
    xag.create_output( all_equal ^ 1u, "miter" );
    return xag;
  };

  if ( spec.num_faults == 0u )
  {
    return build( {}, nullptr );
  }

  int64_t positions = 0;
  build( {}, &positions );
  assert( positions >= static_cast<int64_t>( spec.num_faults ) );

  splitmix64_rng rng{spec.seed};
  std::vector<int64_t> faults;
  while ( faults.size() < spec.num_faults )
  {
    int64_t const pick =
        static_cast<int64_t>( rng.next() % static_cast<uint64_t>( positions ) );
    if ( std::find( faults.begin(), faults.end(), pick ) == faults.end() )
    {
      faults.push_back( pick );
    }
  }
  return build( faults, nullptr );
}

} // namespace qoracle
