/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file simulation.hpp
  \brief Statevector and sparse simulation of {CNOT, H, Rz} circuits

  Qubit 0 is the most significant bit of a basis index, matching the truth
  table convention that variable 0 drives the top half of the rows.

  The dense simulator holds the full statevector; its hot loops exist in an
  OpenMP-parallel and a serial reference variant that produce bit-identical
  results.  The sparse simulator follows individual basis states and is the
  workhorse for checking compiled oracles: between the two Hadamards of a
  single-target gate a state splits into at most two branches, so whole-
  oracle checks stay linear in the gate count.
*/

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace qoracle
{

using amplitude = std::complex<double>;

namespace detail
{

inline double inv_sqrt2()
{
  return 0.70710678118654752440084436210484903928;
}

template<bool parallel>
void apply_dense_gate( std::vector<amplitude>& state, uint32_t num_qubits,
                       gate const& g )
{
  int64_t const size = static_cast<int64_t>( state.size() );
  switch ( g.kind )
  {
  case gate::op::hadamard:
  {
    uint32_t const shift = num_qubits - 1u - g.target;
    uint64_t const mask = uint64_t( 1 ) << shift;
    uint64_t const low = mask - 1u;
    int64_t const pairs = size / 2;
    auto const body = [&]( int64_t k ) {
      uint64_t const u = static_cast<uint64_t>( k );
      uint64_t const i0 = ( ( u & ~low ) << 1 ) | ( u & low );
      uint64_t const i1 = i0 | mask;
      amplitude const a = state[i0];
      amplitude const b = state[i1];
      state[i0] = ( a + b ) * inv_sqrt2();
      state[i1] = ( a - b ) * inv_sqrt2();
    };
    if constexpr ( parallel )
    {
#pragma omp parallel for schedule( static )
      for ( int64_t k = 0; k < pairs; ++k )
      {
        body( k );
      }
    }
    else
    {
      for ( int64_t k = 0; k < pairs; ++k )
      {
        body( k );
      }
    }
    break;
  }
  case gate::op::cnot:
  {
    uint64_t const cmask = uint64_t( 1 ) << ( num_qubits - 1u - g.control );
    uint64_t const tmask = uint64_t( 1 ) << ( num_qubits - 1u - g.target );
    auto const body = [&]( int64_t i ) {
      uint64_t const u = static_cast<uint64_t>( i );
      if ( ( u & cmask ) != 0u && ( u & tmask ) == 0u )
      {
        std::swap( state[u], state[u | tmask] );
      }
    };
    if constexpr ( parallel )
    {
#pragma omp parallel for schedule( static )
      for ( int64_t i = 0; i < size; ++i )
      {
        body( i );
      }
    }
    else
    {
      for ( int64_t i = 0; i < size; ++i )
      {
        body( i );
      }
    }
    break;
  }
  case gate::op::rz:
  {
    uint64_t const mask = uint64_t( 1 ) << ( num_qubits - 1u - g.target );
    double const half = g.theta.radians() / 2.0;
    amplitude const minus = std::polar( 1.0, -half );
    amplitude const plus = std::polar( 1.0, half );
    auto const body = [&]( int64_t i ) {
      uint64_t const u = static_cast<uint64_t>( i );
      state[u] *= ( u & mask ) ? plus : minus;
    };
    if constexpr ( parallel )
    {
#pragma omp parallel for schedule( static )
      for ( int64_t i = 0; i < size; ++i )
      {
        body( i );
      }
    }
    else
    {
      for ( int64_t i = 0; i < size; ++i )
      {
        body( i );
      }
    }
    break;
  }
  }
}

template<bool parallel>
std::vector<amplitude> simulate_dense_impl( circuit const& c, uint64_t initial )
{
  assert( c.num_qubits() <= 16u );
  std::vector<amplitude> state( uint64_t( 1 ) << c.num_qubits(), amplitude{} );
  state[initial] = 1.0;
  for ( auto const& g : c.gates() )
  {
    apply_dense_gate<parallel>( state, c.num_qubits(), g );
  }
  return state;
}

} // namespace detail

/*! \brief Full statevector after running `c` on a basis state. */
inline std::vector<amplitude> simulate_dense( circuit const& c,
                                              uint64_t initial = 0u )
{
  return detail::simulate_dense_impl<true>( c, initial );
}

/*! \brief Serial reference of `simulate_dense`; results are bit-identical. */
inline std::vector<amplitude> simulate_dense_serial( circuit const& c,
                                                     uint64_t initial = 0u )
{
  return detail::simulate_dense_impl<false>( c, initial );
}

/*! \brief A few weighted basis states. */
struct sparse_state
{
  std::vector<std::pair<uint64_t, amplitude>> components;

  /*! \brief Amplitude at one basis state. */
  amplitude at( uint64_t basis ) const
  {
    for ( auto const& [b, a] : components )
    {
      if ( b == basis )
      {
        return a;
      }
    }
    return {};
  }
};

/*! \brief Follows a basis state through `c`, branching only at Hadamards. */
inline sparse_state simulate_sparse( circuit const& c, uint64_t initial,
                                     double prune = 1e-12 )
{
  sparse_state state;
  state.components.push_back( {initial, 1.0} );
  std::vector<std::pair<uint64_t, amplitude>> next;
  for ( auto const& g : c.gates() )
  {
    uint64_t const mask = uint64_t( 1 ) << ( c.num_qubits() - 1u - g.target );
    switch ( g.kind )
    {
    case gate::op::cnot:
    {
      uint64_t const cmask = uint64_t( 1 )
                             << ( c.num_qubits() - 1u - g.control );
      for ( auto& [basis, amp] : state.components )
      {
        if ( basis & cmask )
        {
          basis ^= mask;
        }
      }
      break;
    }
    case gate::op::rz:
    {
      double const half = g.theta.radians() / 2.0;
      amplitude const minus = std::polar( 1.0, -half );
      amplitude const plus = std::polar( 1.0, half );
      for ( auto& [basis, amp] : state.components )
      {
        amp *= ( basis & mask ) ? plus : minus;
      }
      break;
    }
    case gate::op::hadamard:
    {
      next.clear();
      for ( auto const& [basis, amp] : state.components )
      {
        amplitude const half = amp * detail::inv_sqrt2();
        if ( basis & mask )
        {
          next.push_back( {basis ^ mask, half} );
          next.push_back( {basis, -half} );
        }
        else
        {
          next.push_back( {basis, half} );
          next.push_back( {basis ^ mask, half} );
        }
      }
      std::sort( next.begin(), next.end(),
                 []( auto const& a, auto const& b ) { return a.first < b.first; } );
      state.components.clear();
      for ( auto const& [basis, amp] : next )
      {
        if ( !state.components.empty() &&
             state.components.back().first == basis )
        {
          state.components.back().second += amp;
        }
        else
        {
          state.components.push_back( {basis, amp} );
        }
      }
      std::erase_if( state.components, [&]( auto const& entry ) {
        return std::abs( entry.second ) < prune;
      } );
      break;
    }
    }
  }
  return state;
}

/*! \brief Dense unitary of a small circuit, row major. */
inline std::vector<std::vector<amplitude>> circuit_unitary( circuit const& c )
{
  assert( c.num_qubits() <= 10u );
  uint64_t const dim = uint64_t( 1 ) << c.num_qubits();
  std::vector<std::vector<amplitude>> unitary(
      dim, std::vector<amplitude>( dim, amplitude{} ) );
  for ( uint64_t column = 0u; column < dim; ++column )
  {
    auto const state = simulate_dense_serial( c, column );
    for ( uint64_t row = 0u; row < dim; ++row )
    {
      unitary[row][column] = state[row];
    }
  }
  return unitary;
}

/*! \brief Largest modulus difference between two unitaries up to global phase.
 *
 * Aligns the second unitary by the phase of the entry with the largest
 * modulus in the first, then reports the largest entrywise distance.
 */
inline double unitary_distance( std::vector<std::vector<amplitude>> const& a,
                                std::vector<std::vector<amplitude>> const& b )
{
  assert( a.size() == b.size() );
  uint64_t best_row = 0u, best_column = 0u;
  double best = -1.0;
  for ( uint64_t row = 0u; row < a.size(); ++row )
  {
    for ( uint64_t column = 0u; column < a.size(); ++column )
    {
      if ( std::abs( a[row][column] ) > best )
      {
        best = std::abs( a[row][column] );
        best_row = row;
        best_column = column;
      }
    }
  }
  if ( std::abs( b[best_row][best_column] ) < 1e-15 )
  {
    return 1.0;
  }
  amplitude const align = ( a[best_row][best_column] / std::abs( a[best_row][best_column] ) ) /
                          ( b[best_row][best_column] / std::abs( b[best_row][best_column] ) );
  double distance = 0.0;
  for ( uint64_t row = 0u; row < a.size(); ++row )
  {
    for ( uint64_t column = 0u; column < a.size(); ++column )
    {
      distance = std::max( distance,
                           std::abs( a[row][column] - align * b[row][column] ) );
    }
  }
  return distance;
}

struct oracle_check
{
  bool ok{false};
  double max_deviation{1.0};
  std::string message;
};

/*! \brief Checks that a circuit maps every |x>|y>|0..0> to |x>|y ^ f(x)>|0..0>.
 *
 * The first `num_inputs` qubits hold x, the next `num_outputs` hold y, and
 * any remaining qubits are ancillae that must return to zero.  The
 * reference callable maps an input assignment to the expected output
 * assignment.  All 2^(inputs+outputs) initial states are followed with the
 * sparse simulator in parallel; the deviation is the largest distance of
 * any final amplitude from the first state's amplitude, so both leakage
 * and a basis-dependent phase count as errors.
 */
inline oracle_check verify_oracle(
    circuit const& c, uint32_t num_inputs, uint32_t num_outputs,
    std::function<std::vector<bool>( std::vector<bool> const& )> const& reference )
{
  uint64_t const cases = uint64_t( 1 ) << ( num_inputs + num_outputs );
  std::vector<amplitude> results( cases );
  std::vector<uint8_t> landed( cases, 0u );

#pragma omp parallel for schedule( dynamic, 16 )
  for ( int64_t index = 0; index < static_cast<int64_t>( cases ); ++index )
  {
    uint64_t const bits = static_cast<uint64_t>( index );
    std::vector<bool> inputs( num_inputs );
    for ( uint32_t i = 0u; i < num_inputs; ++i )
    {
      inputs[i] = ( ( bits >> ( num_inputs + num_outputs - 1u - i ) ) & 1u ) != 0u;
    }
    auto const outputs = reference( inputs );
    uint64_t const shift = c.num_qubits() - num_inputs - num_outputs;
    uint64_t expected = bits << shift;
    for ( uint32_t k = 0u; k < num_outputs; ++k )
    {
      if ( outputs[k] )
      {
        expected ^= uint64_t( 1 ) << ( c.num_qubits() - 1u - num_inputs - k );
      }
    }
    auto const state = simulate_sparse( c, bits << shift );
    amplitude reached{};
    bool clean = true;
    for ( auto const& [basis, amp] : state.components )
    {
      if ( basis == expected )
      {
        reached = amp;
      }
      else if ( std::abs( amp ) > 1e-9 )
      {
        clean = false;
      }
    }
    /* unitarity puts the missing mass somewhere visible, so a tiny
       amplitude at the expected state means a leak even without a large
       stray component */
    if ( std::abs( reached ) < 0.5 )
    {
      clean = false;
    }
    results[index] = reached;
    landed[index] = clean ? 1u : 0u;
  }

  oracle_check check;
  check.ok = true;
  check.max_deviation = 0.0;
  for ( uint64_t index = 0u; index < cases; ++index )
  {
    if ( !landed[index] )
    {
      check.ok = false;
      check.message = "state " + std::to_string( index ) +
                      " leaks outside its image";
      check.max_deviation = 1.0;
      return check;
    }
    double const deviation = std::abs( results[index] - results[0] );
    check.max_deviation = std::max( check.max_deviation, deviation );
  }
  if ( check.max_deviation > 1e-6 )
  {
    check.ok = false;
    check.message = "amplitudes disagree by " +
                    std::to_string( check.max_deviation );
  }
  return check;
}

} // namespace qoracle
