/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file lut_mapping.hpp
  \brief Cost-driven k-LUT covering of XAGs

  Every required gate is covered by the best cut of its priority list.  In
  spectral mode the objective is the number of nonzero Walsh coefficients of
  the chosen cut functions; in baseline mode it is unit area driven by area
  flow.
*/

#pragma once

#include "cut_enumeration.hpp"
#include "spectrum.hpp"
#include "truth_table.hpp"
#include "xag.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoracle
{

class mapping_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief A mapped network of single-output lookup tables.
 *
 * References below `num_inputs` denote primary inputs; reference
 * `num_inputs + i` denotes the output of lut `i`.  Luts are stored in
 * topological order.
 */
struct lut_network
{
  static constexpr uint32_t constant_ref = 0xffffffffu;

  struct lut
  {
    std::vector<uint32_t> leaves;
    truth_table function;
    bool is_xor_block{false};
    bool block_complement{false};
    uint32_t cost{0u};
  };

  struct output_ref
  {
    uint32_t ref{constant_ref};
    bool complement{false};
  };

  uint32_t num_inputs{0u};
  std::vector<lut> luts;
  std::vector<output_ref> outputs;

  uint32_t num_luts() const { return static_cast<uint32_t>( luts.size() ); }

  bool lut_value( std::vector<bool> const& values, lut const& l ) const
  {
    if ( l.is_xor_block )
    {
      bool v = l.block_complement;
      for ( auto leaf : l.leaves )
      {
        v ^= values[leaf];
      }
      return v;
    }
    uint64_t row = 0u;
    for ( uint32_t i = 0u; i < l.leaves.size(); ++i )
    {
      row = ( row << 1u ) | ( values[l.leaves[i]] ? 1u : 0u );
    }
    return l.function.get_bit( row );
  }

  std::vector<bool> evaluate( std::vector<bool> const& input_values ) const
  {
    if ( input_values.size() != num_inputs )
    {
      throw std::invalid_argument( "evaluate: wrong number of input values" );
    }
    std::vector<bool> values( num_inputs + luts.size() );
    std::copy( input_values.begin(), input_values.end(), values.begin() );
    for ( uint32_t i = 0u; i < luts.size(); ++i )
    {
      values[num_inputs + i] = lut_value( values, luts[i] );
    }
    std::vector<bool> result;
    result.reserve( outputs.size() );
    for ( auto const& o : outputs )
    {
      bool const v = o.ref == constant_ref ? false : values[o.ref];
      result.push_back( v != o.complement );
    }
    return result;
  }

  /*! \brief Reference counts of luts from other luts and outputs. */
  std::vector<uint32_t> lut_fanout() const
  {
    std::vector<uint32_t> counts( luts.size(), 0u );
    for ( auto const& l : luts )
    {
      for ( auto leaf : l.leaves )
      {
        if ( leaf >= num_inputs )
        {
          ++counts[leaf - num_inputs];
        }
      }
    }
    for ( auto const& o : outputs )
    {
      if ( o.ref != constant_ref && o.ref >= num_inputs )
      {
        ++counts[o.ref - num_inputs];
      }
    }
    return counts;
  }
};

struct mapping_stats
{
  uint32_t lut_count{0u};
  uint64_t total_cost{0u};
  uint32_t xor_block_count{0u};
  uint32_t max_leaves{0u};
};

/*! \brief Maps `xag` onto k-LUTs; see `mapper_params` for the objective. */
inline lut_network map_luts( xag_network const& xag, mapper_params const& params,
                             mapping_stats* stats = nullptr )
{
  if ( params.cut_size < 2u || params.cut_size > 8u )
  {
    throw mapping_error( "cut size must be between 2 and 8" );
  }
  if ( params.cut_limit < 1u )
  {
    throw mapping_error( "cut limit must be at least 1" );
  }

  cut_enumeration enumeration( xag, params );

  /* collect required gates: those reached from outputs through chosen cuts */
  std::vector<bool> required( xag.size(), false );
  std::vector<uint32_t> stack;
  for ( auto output : xag.outputs() )
  {
    uint32_t const n = xag_network::literal_node( output );
    if ( xag.is_gate( n ) && !required[n] )
    {
      required[n] = true;
      stack.push_back( n );
    }
  }
  while ( !stack.empty() )
  {
    uint32_t const n = stack.back();
    stack.pop_back();
    for ( auto leaf : enumeration.cuts( n ).best().leaves )
    {
      if ( xag.is_gate( leaf ) && !required[leaf] )
      {
        required[leaf] = true;
        stack.push_back( leaf );
      }
    }
  }

  lut_network result;
  result.num_inputs = xag.num_inputs();

  std::vector<uint32_t> lut_of( xag.size(), lut_network::constant_ref );
  for ( uint32_t n = 0u; n < xag.size(); ++n )
  {
    if ( !required[n] )
    {
      continue;
    }
    auto const& chosen = enumeration.cuts( n ).best();
    lut_network::lut l;
    l.leaves.reserve( chosen.leaves.size() );
    for ( auto leaf : chosen.leaves )
    {
      uint32_t const ref = xag.is_input( leaf ) ? xag.input_index( leaf )
                                                : lut_of[leaf];
      assert( ref != lut_network::constant_ref );
      l.leaves.push_back( ref );
    }
    l.function = chosen.function;
    l.is_xor_block = chosen.is_xor_block;
    l.block_complement = chosen.block_complement;
    l.cost = chosen.cost;
    lut_of[n] = result.num_inputs + result.num_luts();
    result.luts.push_back( std::move( l ) );
  }

  for ( uint32_t k = 0u; k < xag.num_outputs(); ++k )
  {
    uint32_t const literal = xag.outputs()[k];
    uint32_t const n = xag_network::literal_node( literal );
    lut_network::output_ref o;
    o.complement = xag_network::literal_complemented( literal );
    if ( xag.is_constant( n ) )
    {
      o.ref = lut_network::constant_ref;
    }
    else if ( xag.is_input( n ) )
    {
      o.ref = xag.input_index( n );
    }
    else
    {
      o.ref = lut_of[n];
    }
    result.outputs.push_back( o );
  }

  if ( stats != nullptr )
  {
    stats->lut_count = result.num_luts();
    stats->total_cost = 0u;
    stats->xor_block_count = 0u;
    stats->max_leaves = 0u;
    for ( auto const& l : result.luts )
    {
      stats->total_cost += params.mode == mapper_params::cost_mode::baseline_area
                               ? 1u
                               : l.cost;
      if ( l.is_xor_block )
      {
        ++stats->xor_block_count;
      }
      stats->max_leaves = std::max<uint32_t>(
          stats->max_leaves, static_cast<uint32_t>( l.leaves.size() ) );
    }
  }
  return result;
}

/*! \brief One line per lut: index, cost, leaves, and function in hex. */
inline void write_lut_network( lut_network const& network, std::ostream& out )
{
  out << "luts " << network.num_inputs << ' ' << network.outputs.size() << ' '
      << network.num_luts() << '\n';
  auto const ref_name = [&]( uint32_t ref ) {
    return ref < network.num_inputs ? "x" + std::to_string( ref )
                                    : "n" + std::to_string( ref - network.num_inputs );
  };
  for ( uint32_t i = 0u; i < network.num_luts(); ++i )
  {
    auto const& l = network.luts[i];
    out << "n" << i << ( l.is_xor_block ? " xor" : " lut" );
    if ( l.is_xor_block && l.block_complement )
    {
      out << '!';
    }
    for ( auto leaf : l.leaves )
    {
      out << ' ' << ref_name( leaf );
    }
    if ( !l.is_xor_block )
    {
      out << " 0x" << l.function.to_hex();
    }
    out << '\n';
  }
  for ( auto const& o : network.outputs )
  {
    out << "out " << ( o.complement ? "!" : "" )
        << ( o.ref == lut_network::constant_ref ? std::string( "const0" )
                                                : ref_name( o.ref ) )
        << '\n';
  }
}

} // namespace qoracle
