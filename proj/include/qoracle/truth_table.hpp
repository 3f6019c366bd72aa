/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file truth_table.hpp
  \brief Dynamic truth tables over up to 16 variables

  Rows are indexed by the variable assignment read as a binary number with
  the first variable as the most significant bit: row x = (x1 x2 ... xn)_2.
*/

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace qoracle
{

class truth_table
{
public:
  static constexpr uint32_t max_num_vars = 16u;

  truth_table() = default;

  explicit truth_table( uint32_t num_vars )
      : num_vars_( num_vars ),
        bits_( word_count( num_vars ), 0u )
  {
    assert( num_vars <= max_num_vars );
  }

  /*! \brief Projection onto one variable.
   *
   * Variable `var` is 0-based; variable 0 is the most significant bit of the
   * row index.  For two variables, `nth_var( 2, 1 )` has bit pattern 0101.
   */
  static truth_table nth_var( uint32_t num_vars, uint32_t var )
  {
    assert( var < num_vars );
    truth_table tt( num_vars );
    for ( uint64_t row = 0u; row < tt.num_bits(); ++row )
    {
      if ( ( row >> ( num_vars - 1u - var ) ) & 1u )
      {
        tt.set_bit( row );
      }
    }
    return tt;
  }

  static truth_table constant( uint32_t num_vars, bool value )
  {
    truth_table tt( num_vars );
    if ( value )
    {
      std::fill( tt.bits_.begin(), tt.bits_.end(), ~uint64_t( 0 ) );
      tt.mask_padding();
    }
    return tt;
  }

  /*! \brief Constructs a table from the row values `bits`, row 0 in bit 0. */
  static truth_table from_bits( uint32_t num_vars, uint64_t bits )
  {
    assert( num_vars <= 6u );
    truth_table tt( num_vars );
    tt.bits_[0] = bits;
    tt.mask_padding();
    return tt;
  }

  uint32_t num_vars() const { return num_vars_; }
  uint64_t num_bits() const { return uint64_t( 1 ) << num_vars_; }

  bool get_bit( uint64_t row ) const
  {
    assert( row < num_bits() );
    return ( bits_[row >> 6u] >> ( row & 63u ) ) & 1u;
  }

  void set_bit( uint64_t row, bool value = true )
  {
    assert( row < num_bits() );
    if ( value )
    {
      bits_[row >> 6u] |= uint64_t( 1 ) << ( row & 63u );
    }
    else
    {
      bits_[row >> 6u] &= ~( uint64_t( 1 ) << ( row & 63u ) );
    }
  }

  uint64_t count_ones() const
  {
    uint64_t count = 0u;
    for ( auto word : bits_ )
    {
      count += __builtin_popcountll( word );
    }
    return count;
  }

  bool is_constant( bool value ) const
  {
    return *this == constant( num_vars_, value );
  }

  truth_table operator~() const
  {
    truth_table result( num_vars_ );
    std::transform( bits_.begin(), bits_.end(), result.bits_.begin(),
                    []( uint64_t w ) { return ~w; } );
    result.mask_padding();
    return result;
  }

  truth_table operator&( truth_table const& other ) const { return binary_op( other, []( uint64_t a, uint64_t b ) { return a & b; } ); }
  truth_table operator|( truth_table const& other ) const { return binary_op( other, []( uint64_t a, uint64_t b ) { return a | b; } ); }
  truth_table operator^( truth_table const& other ) const { return binary_op( other, []( uint64_t a, uint64_t b ) { return a ^ b; } ); }

  bool operator==( truth_table const& other ) const
  {
    return num_vars_ == other.num_vars_ && bits_ == other.bits_;
  }

  bool operator!=( truth_table const& other ) const { return !( *this == other ); }

  bool operator<( truth_table const& other ) const
  {
    if ( num_vars_ != other.num_vars_ )
    {
      return num_vars_ < other.num_vars_;
    }
    return std::lexicographical_compare( bits_.rbegin(), bits_.rend(),
                                         other.bits_.rbegin(), other.bits_.rend() );
  }

  /*! \brief Re-expresses the table over a larger variable set.
   *
   * Variable `i` of this table becomes variable `positions[i]` of the result;
   * `positions` must be strictly increasing.
   */
  truth_table expanded( std::vector<uint32_t> const& positions, uint32_t new_num_vars ) const
  {
    assert( positions.size() == num_vars_ );
    truth_table result( new_num_vars );
    for ( uint64_t row = 0u; row < result.num_bits(); ++row )
    {
      uint64_t local_row = 0u;
      for ( uint32_t i = 0u; i < num_vars_; ++i )
      {
        assert( positions[i] < new_num_vars );
        if ( ( row >> ( new_num_vars - 1u - positions[i] ) ) & 1u )
        {
          local_row |= uint64_t( 1 ) << ( num_vars_ - 1u - i );
        }
      }
      if ( get_bit( local_row ) )
      {
        result.set_bit( row );
      }
    }
    return result;
  }

  /*! \brief True if the function depends on variable `var`. */
  bool has_support( uint32_t var ) const
  {
    uint64_t const stride = uint64_t( 1 ) << ( num_vars_ - 1u - var );
    for ( uint64_t row = 0u; row < num_bits(); ++row )
    {
      if ( ( row & stride ) == 0u && get_bit( row ) != get_bit( row | stride ) )
      {
        return true;
      }
    }
    return false;
  }

  std::string to_hex() const
  {
    static char const digits[] = "0123456789abcdef";
    uint64_t const nibbles = std::max<uint64_t>( num_bits() >> 2u, 1u );
    std::string result;
    result.reserve( nibbles );
    if ( num_bits() < 4u )
    {
      uint64_t value = bits_[0] & ( ( uint64_t( 1 ) << num_bits() ) - 1u );
      result.push_back( digits[value] );
      return result;
    }
    for ( uint64_t i = nibbles; i-- > 0u; )
    {
      result.push_back( digits[( bits_[i >> 4u] >> ( ( i & 15u ) << 2u ) ) & 0xfu] );
    }
    return result;
  }

private:
  static uint64_t word_count( uint32_t num_vars )
  {
    return num_vars < 6u ? 1u : ( uint64_t( 1 ) << ( num_vars - 6u ) );
  }

  template<class Op>
  truth_table binary_op( truth_table const& other, Op&& op ) const
  {
    assert( num_vars_ == other.num_vars_ );
    truth_table result( num_vars_ );
    std::transform( bits_.begin(), bits_.end(), other.bits_.begin(),
                    result.bits_.begin(), op );
    return result;
  }

  void mask_padding()
  {
    if ( num_vars_ < 6u )
    {
      bits_[0] &= ( uint64_t( 1 ) << num_bits() ) - 1u;
    }
  }

  uint32_t num_vars_{0u};
  std::vector<uint64_t> bits_{0u};
};

} // namespace qoracle
