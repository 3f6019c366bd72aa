/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file circuit.hpp
  \brief Quantum circuits over controlled-not, Hadamard, and z-rotations

  Rotation angles are dyadic multiples of pi, kept as exact integer pairs so
  that circuits compare, merge, and print without rounding.  An inverter is
  not part of the gate set; `add_x` spells it as H Rz(pi) H.
*/

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace qoracle
{

/*! \brief An exact angle of the form numerator * pi / 2^power. */
struct angle
{
  int64_t numerator{0};
  uint32_t power{0u};

  /*! \brief Builds a reduced angle num * pi / 2^pow. */
  static angle dyadic_pi( int64_t num, uint32_t pow )
  {
    while ( num != 0 && ( num % 2 ) == 0 && pow > 0u )
    {
      num /= 2;
      --pow;
    }
    if ( num == 0 )
    {
      pow = 0u;
    }
    return {num, pow};
  }

  bool is_zero() const { return numerator == 0; }

  angle negated() const { return {-numerator, power}; }

  double radians() const
  {
    return std::ldexp( static_cast<double>( numerator ), -static_cast<int>( power ) ) *
           3.141592653589793238462643383279502884;
  }

  bool operator==( angle const& other ) const = default;
};

struct gate
{
  enum class op : uint8_t
  {
    cnot,
    hadamard,
    rz
  };

  op kind{op::cnot};
  uint32_t target{0u};
  uint32_t control{0u}; /*!< cnot only */
  angle theta{};        /*!< rz only */

  bool operator==( gate const& other ) const = default;
};

class circuit
{
public:
  explicit circuit( uint32_t num_qubits = 0u )
      : num_qubits_( num_qubits )
  {
  }

  uint32_t num_qubits() const { return num_qubits_; }

  std::vector<gate> const& gates() const { return gates_; }

  size_t num_gates() const { return gates_.size(); }

  void add_cnot( uint32_t control, uint32_t target )
  {
    assert( control < num_qubits_ && target < num_qubits_ );
    assert( control != target );
    gates_.push_back( {gate::op::cnot, target, control, {}} );
  }

  void add_h( uint32_t target )
  {
    assert( target < num_qubits_ );
    gates_.push_back( {gate::op::hadamard, target, 0u, {}} );
  }

  /*! \brief Appends a z-rotation; zero angles are dropped. */
  void add_rz( uint32_t target, angle theta )
  {
    assert( target < num_qubits_ );
    if ( theta.is_zero() )
    {
      return;
    }
    gates_.push_back( {gate::op::rz, target, 0u, theta} );
  }

  /*! \brief Appends an inverter as H Rz(pi) H. */
  void add_x( uint32_t target )
  {
    add_h( target );
    add_rz( target, angle::dyadic_pi( 1, 0u ) );
    add_h( target );
  }

  size_t num_cnots() const { return count( gate::op::cnot ); }
  size_t num_hadamards() const { return count( gate::op::hadamard ); }
  size_t num_rotations() const { return count( gate::op::rz ); }

private:
  size_t count( gate::op kind ) const
  {
    size_t n = 0u;
    for ( auto const& g : gates_ )
    {
      n += g.kind == kind;
    }
    return n;
  }

  uint32_t num_qubits_{0u};
  std::vector<gate> gates_;
};

} // namespace qoracle
