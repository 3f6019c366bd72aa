/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file xag.hpp
  \brief XOR-AND graphs with complemented edges

  Nodes are addressed by index; node 0 is the constant false.  Edges are
  literals 2 * node + complement, so literal 0 is false and literal 1 is
  true.  Gates always reference nodes with smaller indices, hence node order
  is a topological order.
*/

#pragma once

#include "truth_table.hpp"

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qoracle
{

class xag_network
{
public:
  enum class node_kind : uint8_t
  {
    constant,
    input,
    and_gate,
    xor_gate
  };

  struct node
  {
    node_kind kind;
    uint32_t fanin0;
    uint32_t fanin1;
  };

  static constexpr uint32_t make_literal( uint32_t n, bool complement = false )
  {
    return 2u * n + ( complement ? 1u : 0u );
  }

  static constexpr uint32_t literal_node( uint32_t literal ) { return literal >> 1u; }
  static constexpr bool literal_complemented( uint32_t literal ) { return literal & 1u; }

  xag_network()
  {
    nodes_.push_back( {node_kind::constant, 0u, 0u} );
  }

  uint32_t create_input( std::string name = {} )
  {
    uint32_t const index = static_cast<uint32_t>( nodes_.size() );
    nodes_.push_back( {node_kind::input, 0u, 0u} );
    inputs_.push_back( index );
    input_names_.push_back( std::move( name ) );
    return make_literal( index );
  }

  /*! \brief Creates a conjunction with constant propagation and hashing. */
  uint32_t create_and( uint32_t a, uint32_t b )
  {
    if ( a > b )
    {
      std::swap( a, b );
    }
    if ( a == 0u )
    {
      return 0u;
    }
    if ( a == 1u )
    {
      return b;
    }
    if ( a == b )
    {
      return a;
    }
    if ( ( a ^ 1u ) == b )
    {
      return 0u;
    }
    return strash( node_kind::and_gate, a, b );
  }

  /*! \brief Creates an exclusive-or; fanins are stored uncomplemented. */
  uint32_t create_xor( uint32_t a, uint32_t b )
  {
    if ( a > b )
    {
      std::swap( a, b );
    }
    if ( a == 0u )
    {
      return b;
    }
    if ( a == 1u )
    {
      return b ^ 1u;
    }
    if ( a == b )
    {
      return 0u;
    }
    if ( ( a ^ 1u ) == b )
    {
      return 1u;
    }
    bool const complement = literal_complemented( a ) != literal_complemented( b );
    return strash( node_kind::xor_gate, a & ~1u, b & ~1u ) ^ ( complement ? 1u : 0u );
  }

  /*! \brief Appends a gate verbatim, without propagation or hashing. */
  uint32_t add_gate( node_kind kind, uint32_t a, uint32_t b )
  {
    assert( kind == node_kind::and_gate || kind == node_kind::xor_gate );
    check_literal( a );
    check_literal( b );
    uint32_t const index = static_cast<uint32_t>( nodes_.size() );
    nodes_.push_back( {kind, a, b} );
    return make_literal( index );
  }

  void create_output( uint32_t literal, std::string name = {} )
  {
    check_literal( literal );
    outputs_.push_back( literal );
    output_names_.push_back( std::move( name ) );
  }

  uint32_t size() const { return static_cast<uint32_t>( nodes_.size() ); }
  uint32_t num_inputs() const { return static_cast<uint32_t>( inputs_.size() ); }
  uint32_t num_outputs() const { return static_cast<uint32_t>( outputs_.size() ); }
  uint32_t num_gates() const { return size() - 1u - num_inputs(); }

  node const& get_node( uint32_t index ) const { return nodes_[index]; }
  bool is_constant( uint32_t index ) const { return nodes_[index].kind == node_kind::constant; }
  bool is_input( uint32_t index ) const { return nodes_[index].kind == node_kind::input; }
  bool is_and( uint32_t index ) const { return nodes_[index].kind == node_kind::and_gate; }
  bool is_xor( uint32_t index ) const { return nodes_[index].kind == node_kind::xor_gate; }
  bool is_gate( uint32_t index ) const { return is_and( index ) || is_xor( index ); }

  std::vector<uint32_t> const& inputs() const { return inputs_; }
  std::vector<uint32_t> const& outputs() const { return outputs_; }
  std::string const& input_name( uint32_t i ) const { return input_names_[i]; }
  std::string const& output_name( uint32_t i ) const { return output_names_[i]; }
  void set_input_name( uint32_t i, std::string name ) { input_names_[i] = std::move( name ); }

  /*! \brief Index of an input node in input order. */
  uint32_t input_index( uint32_t node_index ) const
  {
    assert( is_input( node_index ) );
    auto const it = std::find( inputs_.begin(), inputs_.end(), node_index );
    assert( it != inputs_.end() );
    return static_cast<uint32_t>( it - inputs_.begin() );
  }

  uint32_t num_and_gates() const
  {
    uint32_t count = 0u;
    for ( uint32_t n = 0u; n < size(); ++n )
    {
      if ( is_and( n ) )
      {
        ++count;
      }
    }
    return count;
  }

  std::vector<bool> evaluate( std::vector<bool> const& input_values ) const
  {
    if ( input_values.size() != inputs_.size() )
    {
      throw std::invalid_argument( "evaluate: wrong number of input values" );
    }
    std::vector<bool> values( size(), false );
    for ( uint32_t i = 0u; i < inputs_.size(); ++i )
    {
      values[inputs_[i]] = input_values[i];
    }
    for ( uint32_t n = 0u; n < size(); ++n )
    {
      if ( !is_gate( n ) )
      {
        continue;
      }
      bool const a = literal_value( values, nodes_[n].fanin0 );
      bool const b = literal_value( values, nodes_[n].fanin1 );
      values[n] = is_and( n ) ? ( a && b ) : ( a != b );
    }
    std::vector<bool> result( outputs_.size() );
    for ( uint32_t i = 0u; i < outputs_.size(); ++i )
    {
      result[i] = literal_value( values, outputs_[i] );
    }
    return result;
  }

  /*! \brief Simulates every node over all input assignments (<= 16 inputs). */
  std::vector<truth_table> simulate() const
  {
    uint32_t const n_vars = num_inputs();
    if ( n_vars > truth_table::max_num_vars )
    {
      throw std::invalid_argument( "simulate: too many inputs" );
    }
    std::vector<truth_table> tables( size(), truth_table( n_vars ) );
    for ( uint32_t i = 0u; i < inputs_.size(); ++i )
    {
      tables[inputs_[i]] = truth_table::nth_var( n_vars, i );
    }
    for ( uint32_t n = 0u; n < size(); ++n )
    {
      if ( !is_gate( n ) )
      {
        continue;
      }
      auto const a = literal_table( tables, nodes_[n].fanin0 );
      auto const b = literal_table( tables, nodes_[n].fanin1 );
      tables[n] = is_and( n ) ? ( a & b ) : ( a ^ b );
    }
    return tables;
  }

  truth_table output_table( std::vector<truth_table> const& tables, uint32_t output ) const
  {
    return literal_table( tables, outputs_[output] );
  }

  /*! \brief Fanout counts include gate fanins and output references. */
  std::vector<uint32_t> fanout_counts() const
  {
    std::vector<uint32_t> counts( size(), 0u );
    for ( uint32_t n = 0u; n < size(); ++n )
    {
      if ( is_gate( n ) )
      {
        ++counts[literal_node( nodes_[n].fanin0 )];
        ++counts[literal_node( nodes_[n].fanin1 )];
      }
    }
    for ( auto output : outputs_ )
    {
      ++counts[literal_node( output )];
    }
    return counts;
  }

private:
  static bool literal_value( std::vector<bool> const& values, uint32_t literal )
  {
    return values[literal_node( literal )] != literal_complemented( literal );
  }

  static truth_table literal_table( std::vector<truth_table> const& tables, uint32_t literal )
  {
    auto const& tt = tables[literal_node( literal )];
    return literal_complemented( literal ) ? ~tt : tt;
  }

  void check_literal( uint32_t literal ) const
  {
    if ( literal_node( literal ) >= size() )
    {
      throw std::invalid_argument( "literal references an undefined node" );
    }
  }

  uint32_t strash( node_kind kind, uint32_t a, uint32_t b )
  {
    uint64_t const key =
        ( uint64_t( kind == node_kind::and_gate ? 0u : 1u ) << 63u ) |
        ( uint64_t( a ) << 32u ) | b;
    auto const it = strash_.find( key );
    if ( it != strash_.end() )
    {
      return make_literal( it->second );
    }
    uint32_t const index = static_cast<uint32_t>( nodes_.size() );
    nodes_.push_back( {kind, a, b} );
    strash_.emplace( key, index );
    return make_literal( index );
  }

  std::vector<node> nodes_;
  std::vector<uint32_t> inputs_;
  std::vector<uint32_t> outputs_;
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
  std::unordered_map<uint64_t, uint32_t> strash_;
};

} // namespace qoracle
