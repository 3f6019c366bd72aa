/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file pebbling_oracle.hpp
  \brief Exhaustive reference for the reversible pebbling game

  Breadth-first search over pebble-set bitmasks.  Besides the minimum number
  of moves it reports the number of reachable states, which certifies
  unsolvability: a shortest strategy never revisits a state, so when no
  strategy of at most (reachable states - 1) moves exists, none exists at
  all.
*/

#pragma once

#include <bit>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include <qoracle/scheduling.hpp>

namespace qoracle_test
{

struct bfs_pebbling_result
{
  bool solvable{false};
  uint32_t min_moves{0u};
  uint64_t reachable_states{0u};
};

inline bfs_pebbling_result bfs_pebble( qoracle::pebble_graph const& graph,
                                       uint32_t budget )
{
  auto const n = graph.nodes.size();
  uint32_t final_state = 0u;
  for ( auto o : graph.outputs )
  {
    final_state |= 1u << o;
  }
  /* only pebbles on intermediate nodes count against the budget */
  uint32_t intermediate_mask = 0u;
  for ( uint32_t v = 0u; v < n; ++v )
  {
    if ( graph.nodes[v].role == qoracle::pebble_graph::node_role::intermediate )
    {
      intermediate_mask |= 1u << v;
    }
  }

  std::unordered_map<uint32_t, uint32_t> dist;
  std::queue<uint32_t> frontier;
  dist[0u] = 0u;
  frontier.push( 0u );
  while ( !frontier.empty() )
  {
    auto const state = frontier.front();
    frontier.pop();
    auto const d = dist.at( state );
    for ( uint32_t v = 0u; v < n; ++v )
    {
      bool legal = true;
      for ( auto p : graph.nodes[v].preds )
      {
        if ( ( ( state >> p ) & 1u ) == 0u )
        {
          legal = false;
          break;
        }
      }
      if ( !legal )
      {
        continue;
      }
      uint32_t const next = state ^ ( 1u << v );
      if ( std::popcount( next & intermediate_mask ) > static_cast<int>( budget ) )
      {
        continue;
      }
      if ( dist.count( next ) )
      {
        continue;
      }
      dist[next] = d + 1u;
      frontier.push( next );
    }
  }

  bfs_pebbling_result result;
  result.reachable_states = dist.size();
  if ( auto it = dist.find( final_state ); it != dist.end() )
  {
    result.solvable = true;
    result.min_moves = it->second;
  }
  return result;
}

} // namespace qoracle_test
