/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file scheduling.hpp
  \brief Reversible schedules of single-target gates over a mapped network

  A schedule computes every output of a lut network onto its own target
  qubit and returns every ancilla to zero.  Schedules are produced by
  replaying pebbling strategies; the Bennett strategy (compute everything,
  write the outputs, uncompute in reverse) is the default.
*/

#pragma once

#include "lut_mapping.hpp"
#include "truth_table.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoracle
{

class strategy_error : public std::runtime_error
{
public:
  strategy_error( std::string const& what, std::optional<uint32_t> move = std::nullopt )
      : std::runtime_error( move ? "move " + std::to_string( *move ) + ": " + what
                                 : what ),
        move_( move )
  {
  }

  std::optional<uint32_t> move() const { return move_; }

private:
  std::optional<uint32_t> move_;
};

/*! \brief A single-target gate: target ^= f(controls). */
struct stg_gate
{
  uint32_t target{0u};
  std::vector<uint32_t> controls;

  /*! \brief Control function over the controls; unused for parity gates. */
  truth_table control_function;

  /*! \brief Parity gates compute the xor of all controls. */
  bool is_parity{false};
  bool parity_complement{false};

  bool operator==( stg_gate const& other ) const = default;
};

struct schedule_step
{
  /*! \brief Game node this step toggles; steps come in compute/uncompute pairs. */
  uint32_t game_node{0u};
  bool uncompute{false};
  stg_gate gate;

  bool operator==( schedule_step const& other ) const = default;
};

struct stg_schedule
{
  uint32_t num_qubits{0u};
  uint32_t num_inputs{0u};
  uint32_t num_outputs{0u};
  uint32_t peak_ancillae{0u};
  std::vector<schedule_step> steps;

  bool operator==( stg_schedule const& other ) const = default;
};

/*! \brief The clean-up game played over the mapped network.
 *
 * Game nodes are the luts plus one realizer node per output that is not
 * computed directly: a copy from an input or from a multiply-referenced
 * lut.  Constant outputs stay outside the game; their flips are appended
 * after the strategy.  A lut is realized directly on its output qubit
 * exactly when its only reference is that single output.
 */
struct pebble_graph
{
  enum class node_role : uint8_t
  {
    intermediate, /*!< lut computed on an ancilla */
    direct,       /*!< lut computed on its output qubit */
    copy          /*!< parity copy onto an output qubit */
  };

  struct node
  {
    node_role role{node_role::intermediate};
    uint32_t lut{0u};                 /*!< lut index for intermediate/direct */
    uint32_t output{0u};              /*!< output index for direct/copy */
    uint32_t copy_source{0u};         /*!< lut-network ref for copy */
    bool complement{false};           /*!< output complement for direct/copy */
    std::vector<uint32_t> preds;      /*!< game-node predecessors */
  };

  std::vector<node> nodes;
  std::vector<uint32_t> outputs;      /*!< game nodes that must end pebbled */
  std::vector<uint32_t> game_of_lut;  /*!< lut index to game node */

  uint32_t num_intermediates() const
  {
    uint32_t count = 0u;
    for ( auto const& n : nodes )
    {
      if ( n.role == node_role::intermediate )
      {
        ++count;
      }
    }
    return count;
  }
};

inline pebble_graph build_pebble_graph( lut_network const& network )
{
  auto const fanout = network.lut_fanout();

  /* a lut is direct if its single reference is one output */
  std::vector<int64_t> direct_output_of( network.num_luts(), -1 );
  std::vector<uint32_t> output_refs( network.num_luts(), 0u );
  for ( uint32_t k = 0u; k < network.outputs.size(); ++k )
  {
    auto const& o = network.outputs[k];
    if ( o.ref != lut_network::constant_ref && o.ref >= network.num_inputs )
    {
      uint32_t const lut = o.ref - network.num_inputs;
      ++output_refs[lut];
      direct_output_of[lut] = k;
    }
  }

  pebble_graph graph;
  graph.game_of_lut.resize( network.num_luts() );
  for ( uint32_t i = 0u; i < network.num_luts(); ++i )
  {
    pebble_graph::node n;
    bool const direct = fanout[i] == 1u && output_refs[i] == 1u;
    n.role = direct ? pebble_graph::node_role::direct
                    : pebble_graph::node_role::intermediate;
    n.lut = i;
    if ( direct )
    {
      n.output = static_cast<uint32_t>( direct_output_of[i] );
      n.complement = network.outputs[n.output].complement;
    }
    for ( auto leaf : network.luts[i].leaves )
    {
      if ( leaf >= network.num_inputs )
      {
        n.preds.push_back( graph.game_of_lut[leaf - network.num_inputs] );
      }
    }
    graph.game_of_lut[i] = static_cast<uint32_t>( graph.nodes.size() );
    graph.nodes.push_back( std::move( n ) );
  }

  for ( uint32_t k = 0u; k < network.outputs.size(); ++k )
  {
    auto const& o = network.outputs[k];
    if ( o.ref == lut_network::constant_ref )
    {
      continue;
    }
    if ( o.ref >= network.num_inputs )
    {
      uint32_t const game = graph.game_of_lut[o.ref - network.num_inputs];
      if ( graph.nodes[game].role == pebble_graph::node_role::direct &&
           graph.nodes[game].output == k )
      {
        graph.outputs.push_back( game );
        continue;
      }
    }
    pebble_graph::node n;
    n.role = pebble_graph::node_role::copy;
    n.output = k;
    n.copy_source = o.ref;
    n.complement = o.complement;
    if ( o.ref >= network.num_inputs )
    {
      n.preds.push_back( graph.game_of_lut[o.ref - network.num_inputs] );
    }
    graph.outputs.push_back( static_cast<uint32_t>( graph.nodes.size() ) );
    graph.nodes.push_back( std::move( n ) );
  }
  return graph;
}

struct pebble_move
{
  uint32_t node{0u};
  bool place{true};

  bool operator==( pebble_move const& other ) const = default;
};

using pebbling_strategy = std::vector<pebble_move>;

/*! \brief Compute all, write outputs, uncompute in reverse. */
inline pebbling_strategy bennett_strategy( pebble_graph const& graph )
{
  pebbling_strategy moves;
  std::vector<uint32_t> intermediates;
  for ( uint32_t v = 0u; v < graph.nodes.size(); ++v )
  {
    if ( graph.nodes[v].role == pebble_graph::node_role::intermediate )
    {
      intermediates.push_back( v );
      moves.push_back( {v, true} );
    }
  }
  for ( auto v : graph.outputs )
  {
    moves.push_back( {v, true} );
  }
  for ( auto it = intermediates.rbegin(); it != intermediates.rend(); ++it )
  {
    moves.push_back( {*it, false} );
  }
  return moves;
}

/*! \brief Turns a legal strategy into a schedule of single-target gates.
 *
 * Ancillae are pooled last-in-first-out, so equal strategies map to equal
 * schedules.  Throws `strategy_error` on the first illegal move.
 */
inline stg_schedule schedule_from_strategy( lut_network const& network,
                                            pebble_graph const& graph,
                                            pebbling_strategy const& strategy )
{
  uint32_t const num_inputs = network.num_inputs;
  uint32_t const num_outputs = static_cast<uint32_t>( network.outputs.size() );

  stg_schedule schedule;
  schedule.num_inputs = num_inputs;
  schedule.num_outputs = num_outputs;

  std::vector<bool> pebbled( graph.nodes.size(), false );
  std::vector<uint32_t> qubit_of( graph.nodes.size(), 0u );
  std::vector<uint32_t> free_ancillae;
  uint32_t allocated = 0u;
  uint32_t live = 0u;

  auto const leaf_qubit = [&]( uint32_t ref ) {
    if ( ref < num_inputs )
    {
      return ref;
    }
    uint32_t const game = graph.game_of_lut[ref - num_inputs];
    assert( pebbled[game] );
    return qubit_of[game];
  };

  auto const make_gate = [&]( pebble_graph::node const& n, uint32_t target ) {
    stg_gate gate;
    gate.target = target;
    if ( n.role == pebble_graph::node_role::copy )
    {
      gate.is_parity = true;
      gate.parity_complement = n.complement;
      gate.controls.push_back( leaf_qubit( n.copy_source ) );
      return gate;
    }
    auto const& l = network.luts[n.lut];
    for ( auto leaf : l.leaves )
    {
      gate.controls.push_back( leaf_qubit( leaf ) );
    }
    bool const fold = n.role == pebble_graph::node_role::direct && n.complement;
    if ( l.is_xor_block )
    {
      gate.is_parity = true;
      gate.parity_complement = l.block_complement != fold;
    }
    else
    {
      gate.control_function = fold ? ~l.function : l.function;
    }
    return gate;
  };

  for ( uint32_t m = 0u; m < strategy.size(); ++m )
  {
    auto const [v, place] = strategy[m];
    if ( v >= graph.nodes.size() )
    {
      throw strategy_error( "unknown game node", m );
    }
    auto const& n = graph.nodes[v];
    if ( place == pebbled[v] )
    {
      throw strategy_error( place ? "node is already pebbled" : "node is not pebbled", m );
    }
    for ( auto pred : n.preds )
    {
      if ( !pebbled[pred] )
      {
        throw strategy_error( "predecessor " + std::to_string( pred ) + " is not pebbled", m );
      }
    }

    uint32_t target;
    if ( n.role == pebble_graph::node_role::intermediate )
    {
      if ( place )
      {
        if ( free_ancillae.empty() )
        {
          qubit_of[v] = num_inputs + num_outputs + allocated++;
        }
        else
        {
          qubit_of[v] = free_ancillae.back();
          free_ancillae.pop_back();
        }
        ++live;
        schedule.peak_ancillae = std::max( schedule.peak_ancillae, live );
      }
      target = qubit_of[v];
    }
    else
    {
      target = num_inputs + n.output;
    }

    schedule.steps.push_back( {v, !place, make_gate( n, target )} );
    pebbled[v] = place;
    if ( !place && n.role == pebble_graph::node_role::intermediate )
    {
      free_ancillae.push_back( qubit_of[v] );
      --live;
    }
  }

  for ( uint32_t v = 0u; v < graph.nodes.size(); ++v )
  {
    bool const is_output = std::find( graph.outputs.begin(), graph.outputs.end(), v ) !=
                           graph.outputs.end();
    if ( pebbled[v] != is_output )
    {
      throw strategy_error( is_output ? "output node " + std::to_string( v ) + " ends unpebbled"
                                      : "node " + std::to_string( v ) + " is still pebbled" );
    }
  }

  /* constant outputs are realized outside the game */
  for ( uint32_t k = 0u; k < network.outputs.size(); ++k )
  {
    auto const& o = network.outputs[k];
    if ( o.ref == lut_network::constant_ref && o.complement )
    {
      stg_gate flip;
      flip.target = num_inputs + k;
      flip.is_parity = true;
      flip.parity_complement = true;
      schedule.steps.push_back( {static_cast<uint32_t>( graph.nodes.size() ), false, flip} );
    }
  }

  schedule.num_qubits = num_inputs + num_outputs + allocated;
  return schedule;
}

inline stg_schedule bennett_schedule( lut_network const& network )
{
  auto const graph = build_pebble_graph( network );
  return schedule_from_strategy( network, graph, bennett_strategy( graph ) );
}

/*! \brief Structural validation of a schedule against its network.
 *
 * Checks that control qubits carry the claimed leaf values when each gate
 * fires, that ancillae end clean, and that every output accumulates its
 * function exactly once.  Returns an empty string on success, otherwise a
 * description of the first violation.
 */
inline std::string validate_schedule( lut_network const& network,
                                      stg_schedule const& schedule )
{
  uint32_t const num_inputs = network.num_inputs;
  uint32_t const num_outputs = static_cast<uint32_t>( network.outputs.size() );
  if ( schedule.num_inputs != num_inputs || schedule.num_outputs != num_outputs )
  {
    return "schedule arity does not match the network";
  }

  /* tag per qubit: -1 free, input i, or num_inputs + lut */
  std::vector<int64_t> tag( schedule.num_qubits, -1 );
  for ( uint32_t i = 0u; i < num_inputs; ++i )
  {
    tag[i] = i;
  }
  std::vector<uint32_t> output_writes( num_outputs, 0u );
  std::vector<int64_t> output_writer( num_outputs, -1 );

  auto const graph = build_pebble_graph( network );

  for ( uint32_t s = 0u; s < schedule.steps.size(); ++s )
  {
    auto const& step = schedule.steps[s];
    auto const& gate = step.gate;
    if ( gate.target >= schedule.num_qubits )
    {
      return "step " + std::to_string( s ) + ": target out of range";
    }
    for ( auto c : gate.controls )
    {
      if ( c >= schedule.num_qubits || c == gate.target )
      {
        return "step " + std::to_string( s ) + ": bad control " + std::to_string( c );
      }
    }

    if ( step.game_node >= graph.nodes.size() )
    {
      /* trailing constant flip */
      if ( !gate.is_parity || !gate.controls.empty() )
      {
        return "step " + std::to_string( s ) + ": stray non-constant gate";
      }
      uint32_t const k = gate.target - num_inputs;
      if ( gate.target < num_inputs || k >= num_outputs ||
           network.outputs[k].ref != lut_network::constant_ref )
      {
        return "step " + std::to_string( s ) + ": constant flip targets a non-constant output";
      }
      ++output_writes[k];
      continue;
    }

    auto const& n = graph.nodes[step.game_node];
    auto const check_leaf = [&]( uint32_t qubit, uint32_t ref ) -> bool {
      int64_t const expected = ref < num_inputs ? int64_t( ref )
                                                : int64_t( num_inputs + ( ref - num_inputs ) );
      return tag[qubit] == expected;
    };

    if ( n.role == pebble_graph::node_role::copy )
    {
      if ( !gate.is_parity || gate.controls.size() != 1u ||
           !check_leaf( gate.controls[0], n.copy_source ) )
      {
        return "step " + std::to_string( s ) + ": copy gate does not read its source";
      }
    }
    else
    {
      auto const& l = network.luts[n.lut];
      if ( gate.controls.size() != l.leaves.size() )
      {
        return "step " + std::to_string( s ) + ": control arity mismatch";
      }
      for ( uint32_t i = 0u; i < l.leaves.size(); ++i )
      {
        if ( !check_leaf( gate.controls[i], l.leaves[i] ) )
        {
          return "step " + std::to_string( s ) + ": control " + std::to_string( i ) +
                 " does not carry leaf value";
        }
      }
      bool const fold = n.role == pebble_graph::node_role::direct && n.complement;
      if ( l.is_xor_block )
      {
        if ( !gate.is_parity || gate.parity_complement != ( l.block_complement != fold ) )
        {
          return "step " + std::to_string( s ) + ": parity gate does not match its block";
        }
      }
      else if ( gate.is_parity ||
                gate.control_function != ( fold ? ~l.function : l.function ) )
      {
        return "step " + std::to_string( s ) + ": gate function does not match its lut";
      }
    }

    if ( n.role == pebble_graph::node_role::intermediate )
    {
      int64_t const value_tag = num_inputs + n.lut;
      if ( step.uncompute )
      {
        if ( tag[gate.target] != value_tag )
        {
          return "step " + std::to_string( s ) + ": uncompute target holds a different value";
        }
        tag[gate.target] = -1;
      }
      else
      {
        if ( tag[gate.target] != -1 )
        {
          return "step " + std::to_string( s ) + ": compute target is not a clean ancilla";
        }
        tag[gate.target] = value_tag;
      }
    }
    else
    {
      uint32_t const k = n.output;
      if ( gate.target != num_inputs + k )
      {
        return "step " + std::to_string( s ) + ": output gate targets the wrong qubit";
      }
      if ( output_writer[k] != -1 && output_writer[k] != int64_t( step.game_node ) )
      {
        return "step " + std::to_string( s ) + ": output written by two different nodes";
      }
      output_writer[k] = step.game_node;
      ++output_writes[k];
    }
  }

  for ( uint32_t q = num_inputs + num_outputs; q < schedule.num_qubits; ++q )
  {
    if ( tag[q] != -1 )
    {
      return "ancilla " + std::to_string( q ) + " ends dirty";
    }
  }
  for ( uint32_t k = 0u; k < num_outputs; ++k )
  {
    bool const expects_write = network.outputs[k].ref != lut_network::constant_ref ||
                               network.outputs[k].complement;
    if ( expects_write && ( output_writes[k] % 2u ) == 0u )
    {
      return "output " + std::to_string( k ) + " accumulates an even number of writes";
    }
    if ( !expects_write && output_writes[k] != 0u )
    {
      return "output " + std::to_string( k ) + " receives unexpected writes";
    }
  }
  return {};
}

/*! \brief Classical replay: the schedule computes the network's outputs. */
inline bool schedule_semantics_match( lut_network const& network,
                                      stg_schedule const& schedule )
{
  for ( uint64_t row = 0u; row < ( uint64_t( 1 ) << network.num_inputs ); ++row )
  {
    std::vector<bool> state( schedule.num_qubits, false );
    std::vector<bool> assignment( network.num_inputs );
    for ( uint32_t i = 0u; i < network.num_inputs; ++i )
    {
      assignment[i] = ( row >> ( network.num_inputs - 1u - i ) ) & 1u;
      state[i] = assignment[i];
    }
    for ( auto const& step : schedule.steps )
    {
      auto const& gate = step.gate;
      bool value;
      if ( gate.is_parity )
      {
        value = gate.parity_complement;
        for ( auto c : gate.controls )
        {
          value = value != state[c];
        }
      }
      else
      {
        uint64_t local = 0u;
        for ( auto c : gate.controls )
        {
          local = ( local << 1u ) | ( state[c] ? 1u : 0u );
        }
        value = gate.control_function.get_bit( local );
      }
      state[gate.target] = state[gate.target] != value;
    }

    auto const expected = network.evaluate( assignment );
    for ( uint32_t k = 0u; k < expected.size(); ++k )
    {
      if ( state[network.num_inputs + k] != expected[k] )
      {
        return false;
      }
    }
    for ( uint32_t q = network.num_inputs + static_cast<uint32_t>( expected.size() );
          q < schedule.num_qubits; ++q )
    {
      if ( state[q] )
      {
        return false;
      }
    }
    for ( uint32_t i = 0u; i < network.num_inputs; ++i )
    {
      if ( state[i] != assignment[i] )
      {
        return false;
      }
    }
  }
  return true;
}

} // namespace qoracle
