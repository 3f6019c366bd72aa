/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file stg_synthesis.hpp
  \brief Single-target gates over {CNOT, H, Rz} from spectra

  A single-target gate flips its target exactly when a control function
  evaluates true.  Conjugating the target with Hadamards turns the flip into
  a diagonal phase, and the phase splits along the function's spectrum: one
  z-rotation per nonzero coefficient on a wire carrying the corresponding
  control parity, one on a wire carrying that parity xor the target, and one
  on the bare target.  All angles are exact dyadic multiples of pi, so the
  rotation count is at most twice the number of nonzero coefficients plus
  one.

  Parities are accumulated in place: control parities on the control wire of
  the parity's lowest index, mixed parities on the target itself.  Within
  one accumulator the needed parities are visited in a greedy
  nearest-neighbour order, paying one controlled-not per differing wire, and
  the accumulator is restored afterwards, so the network is the identity on
  everything but the emitted phases.

  Gates whose control function is a bare parity skip all of this: they are a
  controlled-not cascade, plus an inverter when the parity is complemented.
*/

#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "circuit.hpp"
#include "scheduling.hpp"
#include "spectrum.hpp"

namespace qoracle
{

namespace detail
{

/*! \brief Moves an accumulator wire from one parity to another. */
inline void shift_parity( circuit& c, std::vector<uint32_t> const& controls,
                          uint32_t accumulator, uint32_t from, uint32_t to,
                          uint32_t skip_bit )
{
  uint32_t const n = static_cast<uint32_t>( controls.size() );
  uint32_t diff = from ^ to;
  while ( diff != 0u )
  {
    uint32_t const bit = 31u - static_cast<uint32_t>( __builtin_clz( diff ) );
    diff &= ~( 1u << bit );
    if ( bit == skip_bit )
    {
      continue;
    }
    c.add_cnot( controls[n - 1u - bit], accumulator );
  }
}

/*! \brief Greedy nearest-neighbour order, ties to the smaller index. */
inline uint32_t pick_nearest( std::vector<uint32_t> const& pending,
                              std::vector<bool> const& done, uint32_t current )
{
  uint32_t best = 0u;
  int best_cost = -1;
  for ( uint32_t k = 0u; k < pending.size(); ++k )
  {
    if ( done[k] )
    {
      continue;
    }
    int const cost = __builtin_popcount( pending[k] ^ current );
    if ( best_cost < 0 || cost < best_cost ||
         ( cost == best_cost && pending[k] < pending[best] ) )
    {
      best_cost = cost;
      best = k;
    }
  }
  return best;
}

} // namespace detail

/*! \brief Emits one single-target gate into the circuit. */
inline void synthesize_stg( circuit& c, stg_gate const& g )
{
  if ( g.is_parity )
  {
    for ( auto control : g.controls )
    {
      c.add_cnot( control, g.target );
    }
    if ( g.parity_complement )
    {
      c.add_x( g.target );
    }
    return;
  }

  uint32_t const n = static_cast<uint32_t>( g.controls.size() );
  assert( n >= 1u && n <= 8u );
  assert( g.control_function.num_vars() == n );
  auto const s = walsh_spectrum( g.control_function );
  uint32_t const size = uint32_t( 1 ) << n;

  /* phases on pure control parities, grouped by their top variable */
  for ( uint32_t var = 0u; var < n; ++var )
  {
    uint32_t const top = n - 1u - var;
    std::vector<uint32_t> group;
    for ( uint32_t j = 1u << top; j < ( 2u << top ) && j < size; ++j )
    {
      if ( s.coefficients[j] != 0 )
      {
        group.push_back( j );
      }
    }
    if ( group.empty() )
    {
      continue;
    }
    uint32_t const accumulator = g.controls[var];
    uint32_t current = 1u << top;
    std::vector<bool> done( group.size(), false );
    for ( size_t visits = 0u; visits < group.size(); ++visits )
    {
      uint32_t const k = detail::pick_nearest( group, done, current );
      done[k] = true;
      detail::shift_parity( c, g.controls, accumulator, current, group[k], top );
      current = group[k];
      c.add_rz( accumulator, angle::dyadic_pi( s.coefficients[current], n + 1u ) );
    }
    detail::shift_parity( c, g.controls, accumulator, current, 1u << top, top );
  }

  /* phases on target-mixed parities between the two Hadamards */
  c.add_h( g.target );
  std::vector<uint32_t> mixed;
  std::vector<int64_t> mixed_angle;
  int64_t const plain = ( int64_t( 1 ) << n ) - s.coefficients[0];
  if ( plain != 0 )
  {
    mixed.push_back( 0u );
    mixed_angle.push_back( plain );
  }
  for ( uint32_t j = 1u; j < size; ++j )
  {
    if ( s.coefficients[j] != 0 )
    {
      mixed.push_back( j );
      mixed_angle.push_back( -s.coefficients[j] );
    }
  }
  uint32_t current = 0u;
  std::vector<bool> done( mixed.size(), false );
  for ( size_t visits = 0u; visits < mixed.size(); ++visits )
  {
    uint32_t const k = detail::pick_nearest( mixed, done, current );
    done[k] = true;
    detail::shift_parity( c, g.controls, g.target, current, mixed[k], 32u );
    current = mixed[k];
    c.add_rz( g.target, angle::dyadic_pi( mixed_angle[k], n + 1u ) );
  }
  detail::shift_parity( c, g.controls, g.target, current, 0u, 32u );
  c.add_h( g.target );
}

/*! \brief Compiles a schedule of single-target gates into a circuit. */
inline circuit circuit_from_schedule( stg_schedule const& schedule )
{
  circuit c( schedule.num_qubits );
  for ( auto const& step : schedule.steps )
  {
    synthesize_stg( c, step.gate );
  }
  return c;
}

/*! \brief Number of gates one toggle of each game node costs.
 *
 * Copies cost a single CNOT, parity blocks one CNOT per leaf, and bound
 * functions their full spectral synthesis.  Complement folding at
 * schedule time can shift a count by one, which does not affect ranking:
 * the costs steer the checkpoint planner toward recomputing cheap nodes.
 */
inline std::vector<uint32_t> toggle_costs( lut_network const& network,
                                           pebble_graph const& graph )
{
  std::vector<uint32_t> costs( graph.nodes.size(), 1u );
  for ( size_t v = 0u; v < graph.nodes.size(); ++v )
  {
    auto const& n = graph.nodes[v];
    if ( n.role == pebble_graph::node_role::copy )
    {
      continue;
    }
    auto const& l = network.luts[n.lut];
    auto const fanin = static_cast<uint32_t>( l.leaves.size() );
    if ( l.is_xor_block )
    {
      costs[v] = fanin;
      continue;
    }
    circuit scratch( fanin + 1u );
    stg_gate gate;
    gate.target = fanin;
    for ( uint32_t i = 0u; i < fanin; ++i )
    {
      gate.controls.push_back( i );
    }
    gate.control_function = l.function;
    synthesize_stg( scratch, gate );
    costs[v] = scratch.num_gates();
  }
  return costs;
}

} // namespace qoracle
