/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file xor_detection.hpp
  \brief Recovers xor gates from their three-conjunction AIG pattern

  A node n = AND(!u, !v) with single-fanout conjunctions u = AND(a ^ pa,
  b ^ pb) and v = AND(a ^ !pa, b ^ !pb) computes a ^ b ^ pa ^ pb.  Matching
  proceeds bottom-up, so nested patterns collapse into xor trees.
*/

#pragma once

#include "xag.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qoracle
{

/*! \brief Rewrites matched AND patterns of `src` into xor gates. */
inline xag_network detect_xors( xag_network const& src )
{
  auto const fanout = src.fanout_counts();

  struct match
  {
    bool matched{false};
    uint32_t node_a{0u}, node_b{0u};
    bool complement{false};
  };
  std::vector<match> matches( src.size() );
  std::vector<bool> consumed( src.size(), false );

  auto const fanin_pair = [&]( uint32_t n ) {
    auto const& node = src.get_node( n );
    return std::array<uint32_t, 2u>{node.fanin0, node.fanin1};
  };

  for ( uint32_t n = 0u; n < src.size(); ++n )
  {
    if ( !src.is_and( n ) || consumed[n] )
    {
      continue;
    }
    auto const [f0, f1] = fanin_pair( n );
    if ( !xag_network::literal_complemented( f0 ) || !xag_network::literal_complemented( f1 ) )
    {
      continue;
    }
    uint32_t const u = xag_network::literal_node( f0 );
    uint32_t const v = xag_network::literal_node( f1 );
    if ( u == v || !src.is_and( u ) || !src.is_and( v ) )
    {
      continue;
    }
    if ( fanout[u] != 1u || fanout[v] != 1u )
    {
      continue;
    }
    if ( consumed[u] || consumed[v] || matches[u].matched || matches[v].matched )
    {
      continue;
    }
    auto [ua, ub] = fanin_pair( u );
    auto [va, vb] = fanin_pair( v );
    if ( xag_network::literal_node( ua ) > xag_network::literal_node( ub ) )
    {
      std::swap( ua, ub );
    }
    if ( xag_network::literal_node( va ) > xag_network::literal_node( vb ) )
    {
      std::swap( va, vb );
    }
    if ( xag_network::literal_node( ua ) == xag_network::literal_node( ub ) )
    {
      continue;
    }
    if ( xag_network::literal_node( ua ) != xag_network::literal_node( va ) ||
         xag_network::literal_node( ub ) != xag_network::literal_node( vb ) )
    {
      continue;
    }
    if ( ( ua ^ va ) != 1u || ( ub ^ vb ) != 1u )
    {
      continue;
    }
    matches[n] = {true, xag_network::literal_node( ua ), xag_network::literal_node( ub ),
                  xag_network::literal_complemented( ua ) != xag_network::literal_complemented( ub )};
    consumed[u] = consumed[v] = true;
  }

  xag_network dest;
  std::vector<uint32_t> map( src.size(), 0u );
  auto const mapped = [&]( uint32_t literal ) {
    return map[xag_network::literal_node( literal )] ^
           ( xag_network::literal_complemented( literal ) ? 1u : 0u );
  };
  for ( uint32_t n = 0u; n < src.size(); ++n )
  {
    if ( src.is_input( n ) )
    {
      map[n] = dest.create_input( src.input_name( src.input_index( n ) ) );
    }
    else if ( src.is_gate( n ) && !consumed[n] )
    {
      if ( matches[n].matched )
      {
        map[n] = dest.create_xor( map[matches[n].node_a], map[matches[n].node_b] ) ^
                 ( matches[n].complement ? 1u : 0u );
      }
      else if ( src.is_and( n ) )
      {
        map[n] = dest.create_and( mapped( src.get_node( n ).fanin0 ),
                                  mapped( src.get_node( n ).fanin1 ) );
      }
      else
      {
        map[n] = dest.create_xor( mapped( src.get_node( n ).fanin0 ),
                                  mapped( src.get_node( n ).fanin1 ) );
      }
    }
  }
  for ( uint32_t k = 0u; k < src.num_outputs(); ++k )
  {
    dest.create_output( mapped( src.outputs()[k] ), src.output_name( k ) );
  }
  return dest;
}

} // namespace qoracle
