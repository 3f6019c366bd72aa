/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

#include <doctest.h>

#include <cstdint>
#include <vector>

#include <qoracle/pebbling.hpp>
#include <qoracle/sat_solver.hpp>
#include <qoracle/scheduling.hpp>

#include "pebbling_oracle.hpp"

using namespace qoracle;
using qoracle_test::bfs_pebble;

namespace
{

pebble_graph make_graph( std::vector<std::vector<uint32_t>> const& preds,
                         std::vector<uint32_t> const& outputs )
{
  pebble_graph graph;
  for ( auto const& p : preds )
  {
    pebble_graph::node n;
    n.preds = p;
    graph.nodes.push_back( n );
  }
  for ( auto o : outputs )
  {
    graph.nodes[o].role = pebble_graph::node_role::direct;
  }
  graph.outputs = outputs;
  return graph;
}

bool strategy_is_legal( pebble_graph const& graph,
                        pebbling_strategy const& strategy, uint32_t budget )
{
  std::vector<char> pebbled( graph.nodes.size(), 0 );
  int count = 0;
  for ( auto const& move : strategy )
  {
    if ( move.node >= graph.nodes.size() )
    {
      return false;
    }
    for ( auto p : graph.nodes[move.node].preds )
    {
      if ( !pebbled[p] )
      {
        return false;
      }
    }
    if ( static_cast<bool>( pebbled[move.node] ) == move.place )
    {
      return false;
    }
    pebbled[move.node] = move.place ? 1 : 0;
    if ( graph.nodes[move.node].role == pebble_graph::node_role::intermediate )
    {
      count += move.place ? 1 : -1;
      if ( count > static_cast<int>( budget ) )
      {
        return false;
      }
    }
  }
  std::vector<char> expected( graph.nodes.size(), 0 );
  for ( auto o : graph.outputs )
  {
    expected[o] = 1;
  }
  return pebbled == expected;
}

uint64_t splitmix64( uint64_t& state )
{
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

pebble_graph random_dag( uint64_t& state, uint32_t num_nodes )
{
  std::vector<std::vector<uint32_t>> preds( num_nodes );
  std::vector<char> has_successor( num_nodes, 0 );
  for ( uint32_t v = 1u; v < num_nodes; ++v )
  {
    for ( uint32_t u = 0u; u < v; ++u )
    {
      if ( splitmix64( state ) & 1u )
      {
        preds[v].push_back( u );
        has_successor[u] = 1;
      }
    }
  }
  std::vector<uint32_t> outputs;
  for ( uint32_t v = 0u; v < num_nodes; ++v )
  {
    if ( !has_successor[v] )
    {
      outputs.push_back( v );
    }
  }
  return make_graph( preds, outputs );
}

} // namespace

TEST_CASE( "cardinality encoding counts correctly" )
{
  int const n = 5;
  for ( uint32_t bound = 0u; bound <= 5u; ++bound )
  {
    for ( uint32_t assignment = 0u; assignment < ( 1u << n ); ++assignment )
    {
      sat_solver solver;
      std::vector<int> literals;
      for ( int i = 0; i < n; ++i )
      {
        literals.push_back( solver.add_variable() );
      }
      encode_at_most( solver, literals, bound );
      for ( int i = 0; i < n; ++i )
      {
        bool const set = ( ( assignment >> i ) & 1u ) != 0u;
        solver.add_clause( {set ? literals[i] : -literals[i]} );
      }
      bool const expected =
          static_cast<uint32_t>( std::popcount( assignment ) ) <= bound;
      CHECK( ( solver.solve() == sat_result::satisfiable ) == expected );
    }
  }
}

TEST_CASE( "single output node unrolls to the expected formula" )
{
  auto const graph = make_graph( {{}}, {0u} );
  dimacs_builder builder;
  encode_pebbling( builder, graph, 1u, 1u );
  CHECK( builder.to_string() == "p cnf 3 6\n"
                                "-3 1 2 0\n"
                                "-3 -1 -2 0\n"
                                "3 -1 2 0\n"
                                "3 1 -2 0\n"
                                "-1 0\n"
                                "2 0\n" );
}

TEST_CASE( "two node chain within one ancilla pebble" )
{
  /* the budget covers the only intermediate node, so no solver call is
     needed */
  auto const graph = make_graph( {{}, {0u}}, {1u} );
  auto const result = solve_pebbling( graph, {1u, 16u, 1000u} );
  REQUIRE( result.outcome == pebbling_outcome::found );
  CHECK( result.calls == 0u );
  CHECK( result.steps_used == 3u );
  CHECK( strategy_is_legal( graph, result.strategy, 1u ) );
  auto const reference = bfs_pebble( graph, 1u );
  CHECK( reference.solvable );
  CHECK( reference.min_moves == 3u );
}

TEST_CASE( "two node chain fails without ancilla pebbles" )
{
  auto const graph = make_graph( {{}, {0u}}, {1u} );
  auto const result = solve_pebbling( graph, {0u, 12u, 100000u} );
  CHECK( result.outcome == pebbling_outcome::exhausted );
  CHECK( result.calls > 0u );
  CHECK( !bfs_pebble( graph, 0u ).solvable );
}

TEST_CASE( "output pebbles never count against the budget" )
{
  auto const graph = make_graph( {{}, {}}, {0u, 1u} );
  auto const result = solve_pebbling( graph, {0u, 16u, 1000u} );
  REQUIRE( result.outcome == pebbling_outcome::found );
  CHECK( result.calls == 0u );
  CHECK( result.steps_used == 2u );
  CHECK( strategy_is_legal( graph, result.strategy, 0u ) );
  auto const reference = bfs_pebble( graph, 0u );
  CHECK( reference.solvable );
  CHECK( reference.min_moves == 2u );
}

TEST_CASE( "balanced tree within one pebble less than its ancilla count" )
{
  /* two leaves feed two middle nodes feeding the output; four
     intermediates, so three pebbles force the solver to recompute */
  auto const graph =
      make_graph( {{}, {}, {0u}, {1u}, {2u, 3u}}, {4u} );
  auto const result = solve_pebbling( graph, {3u, 24u, 100000u} );
  REQUIRE( result.outcome == pebbling_outcome::found );
  CHECK( result.calls > 0u );
  CHECK( strategy_is_legal( graph, result.strategy, 3u ) );
  auto const reference = bfs_pebble( graph, 3u );
  CHECK( reference.solvable );
  CHECK( result.steps_used >= reference.min_moves );
}

TEST_CASE( "random games agree with breadth-first search" )
{
  uint64_t state = 0xdecafull;
  int solvable_seen = 0;
  int unsolvable_seen = 0;
  for ( int round = 0; round < 30; ++round )
  {
    uint32_t const num_nodes = 3u + static_cast<uint32_t>( splitmix64( state ) % 3u );
    auto const graph = random_dag( state, num_nodes );
    for ( uint32_t budget = 1u; budget < num_nodes; ++budget )
    {
      auto const reference = bfs_pebble( graph, budget );
      if ( reference.solvable )
      {
        ++solvable_seen;
        /* a horizon of exactly the optimum is satisfiable and tight */
        sat_solver solver;
        auto const layout =
            encode_pebbling( solver, graph, reference.min_moves, budget );
        REQUIRE( solver.solve() == sat_result::satisfiable );
        auto const strategy = decode_strategy( solver, layout );
        CHECK( strategy.size() == reference.min_moves );
        CHECK( strategy_is_legal( graph, strategy, budget ) );
        if ( reference.min_moves > 0u )
        {
          sat_solver shorter;
          encode_pebbling( shorter, graph, reference.min_moves - 1u, budget );
          CHECK( shorter.solve() == sat_result::unsatisfiable );
        }
      }
      else
      {
        ++unsolvable_seen;
        /* a shortest strategy never revisits a state, so this horizon
           bounds all of them */
        uint32_t const horizon =
            static_cast<uint32_t>( reference.reachable_states - 1u );
        sat_solver solver;
        encode_pebbling( solver, graph, horizon, budget );
        CHECK( solver.solve() == sat_result::unsatisfiable );
      }
    }
  }
  CHECK( solvable_seen > 10 );
  CHECK( unsolvable_seen > 10 );
}

TEST_CASE( "the search loop finds what breadth-first search finds" )
{
  uint64_t state = 0xfeedull;
  for ( int round = 0; round < 12; ++round )
  {
    uint32_t const num_nodes = 4u + static_cast<uint32_t>( splitmix64( state ) % 2u );
    auto const graph = random_dag( state, num_nodes );
    for ( uint32_t budget = 1u; budget < num_nodes; ++budget )
    {
      auto const reference = bfs_pebble( graph, budget );
      auto const result = solve_pebbling( graph, {budget, 40u, 200000u} );
      REQUIRE( result.outcome != pebbling_outcome::limit_reached );
      if ( reference.solvable )
      {
        REQUIRE( result.outcome == pebbling_outcome::found );
        CHECK( strategy_is_legal( graph, result.strategy, budget ) );
        CHECK( result.steps_used >= reference.min_moves );
      }
      else
      {
        CHECK( result.outcome == pebbling_outcome::exhausted );
      }
    }
  }
}

TEST_CASE( "checkpoint strategies are legal whenever they are returned" )
{
  uint64_t state = 0xc0c0ull;
  int found_seen = 0;
  for ( int round = 0; round < 40; ++round )
  {
    uint32_t const num_nodes = 4u + static_cast<uint32_t>( splitmix64( state ) % 4u );
    auto const graph = random_dag( state, num_nodes );
    std::vector<uint32_t> costs;
    for ( uint32_t v = 0u; v < num_nodes; ++v )
    {
      costs.push_back( 1u + static_cast<uint32_t>( splitmix64( state ) % 20u ) );
    }
    std::vector<std::vector<uint32_t> const*> const variants{nullptr, &costs};
    for ( uint32_t budget = 1u; budget <= num_nodes; ++budget )
    {
      for ( auto const* cost_ptr : variants )
      {
        if ( auto const strategy = checkpoint_strategy( graph, budget, cost_ptr ) )
        {
          ++found_seen;
          CHECK( strategy_is_legal( graph, *strategy, budget ) );
        }
      }
    }
  }
  CHECK( found_seen > 40 );
}

TEST_CASE( "a full budget turns the checkpoint strategy into a clean sweep" )
{
  /* nothing needs recomputing, so every non-output node is placed and
     removed exactly once */
  uint64_t state = 0xabbaull;
  for ( int round = 0; round < 10; ++round )
  {
    uint32_t const num_nodes = 5u + static_cast<uint32_t>( splitmix64( state ) % 3u );
    auto const graph = random_dag( state, num_nodes );
    uint32_t intermediates = 0u;
    for ( auto const& n : graph.nodes )
    {
      if ( n.role == pebble_graph::node_role::intermediate )
      {
        ++intermediates;
      }
    }
    auto const strategy = checkpoint_strategy( graph, intermediates );
    REQUIRE( strategy );
    CHECK( strategy->size() ==
           2u * graph.nodes.size() - graph.outputs.size() );
    CHECK( strategy_is_legal( graph, *strategy, intermediates ) );
  }
}

TEST_CASE( "checkpoint splitting squeezes a chain down to its pebble number" )
{
  /* seven intermediates feed one output; breadth-first search proves three
     pebbles necessary, and the divide-and-conquer recursion matches its
     optimal move counts */
  std::vector<std::vector<uint32_t>> preds{{}};
  for ( uint32_t v = 1u; v < 8u; ++v )
  {
    preds.push_back( {v - 1u} );
  }
  auto const graph = make_graph( preds, {7u} );
  CHECK( !bfs_pebble( graph, 2u ).solvable );
  CHECK( !checkpoint_strategy( graph, 2u ) );
  for ( uint32_t budget = 3u; budget <= 7u; ++budget )
  {
    auto const strategy = checkpoint_strategy( graph, budget );
    REQUIRE( strategy );
    CHECK( strategy_is_legal( graph, *strategy, budget ) );
    CHECK( strategy->size() >= bfs_pebble( graph, budget ).min_moves );
  }
  CHECK( checkpoint_strategy( graph, 3u )->size() == 27u );
  CHECK( checkpoint_strategy( graph, 7u )->size() == 15u );
}

TEST_CASE( "checkpoint planning is deterministic" )
{
  uint64_t state = 0x5151ull;
  auto const graph = random_dag( state, 7u );
  for ( uint32_t budget = 1u; budget <= 6u; ++budget )
  {
    auto const first = checkpoint_strategy( graph, budget );
    auto const second = checkpoint_strategy( graph, budget );
    REQUIRE( first.has_value() == second.has_value() );
    if ( first )
    {
      REQUIRE( first->size() == second->size() );
      for ( size_t i = 0u; i < first->size(); ++i )
      {
        CHECK( ( *first )[i].node == ( *second )[i].node );
        CHECK( ( *first )[i].place == ( *second )[i].place );
      }
    }
  }
}

TEST_CASE( "toggle costs steer recomputation toward cheap nodes" )
{
  /* two mirrored chains with a dead side node each merge into one output;
     a tight budget forces one chain through a checkpoint, and the cost
     vector decides which */
  auto const graph = make_graph( {{},
                                  {0u},
                                  {0u, 1u},
                                  {2u},
                                  {},
                                  {4u},
                                  {4u, 5u},
                                  {6u},
                                  {3u, 7u}},
                                 {8u} );
  std::vector<uint32_t> left_expensive{100u, 100u, 100u, 100u, 1u, 1u, 1u, 1u, 1u};
  std::vector<uint32_t> right_expensive{1u, 1u, 1u, 1u, 100u, 100u, 100u, 100u, 1u};

  auto const toggles = []( pebbling_strategy const& strategy ) {
    std::vector<uint32_t> count( 9u, 0u );
    for ( auto const& move : strategy )
    {
      ++count[move.node];
    }
    return count;
  };
  auto const total = []( pebbling_strategy const& strategy,
                         std::vector<uint32_t> const& costs ) {
    uint64_t sum = 0u;
    for ( auto const& move : strategy )
    {
      sum += costs[move.node];
    }
    return sum;
  };

  auto const left = checkpoint_strategy( graph, 7u, &left_expensive );
  REQUIRE( left );
  CHECK( strategy_is_legal( graph, *left, 7u ) );
  auto const right = checkpoint_strategy( graph, 7u, &right_expensive );
  REQUIRE( right );

  /* expensive nodes near each chain's top are never recomputed */
  CHECK( toggles( *left )[2] == 2u );
  CHECK( toggles( *left )[3] == 2u );
  CHECK( toggles( *right )[6] == 2u );
  CHECK( toggles( *right )[7] == 2u );
  CHECK( total( *left, left_expensive ) == total( *right, right_expensive ) );

  /* and the cost-aware pick beats the cost-blind one under its vector */
  auto const blind = checkpoint_strategy( graph, 5u );
  REQUIRE( blind );
  auto const aware = checkpoint_strategy( graph, 5u, &left_expensive );
  REQUIRE( aware );
  CHECK( total( *aware, left_expensive ) < total( *blind, left_expensive ) );
}

TEST_CASE( "a conflict limited search falls back to a checkpoint strategy" )
{
  /* a starved cumulative limit trips immediately, yet the outcome is still
     a usable strategy because the planner covers the budget */
  std::vector<std::vector<uint32_t>> preds{{}};
  for ( uint32_t v = 1u; v < 8u; ++v )
  {
    preds.push_back( {v - 1u} );
  }
  auto const graph = make_graph( preds, {7u} );
  pebbling_params params;
  params.pebble_budget = 3u;
  params.max_steps = 27u;
  params.conflict_limit = 1u;
  params.cumulative_limit = 1u;
  auto const result = solve_pebbling( graph, params );
  REQUIRE( result.outcome == pebbling_outcome::found );
  CHECK( result.steps_used == 27u );
  CHECK( strategy_is_legal( graph, result.strategy, 3u ) );

  /* one step less than the shortest strategy pushes it out of reach */
  params.max_steps = 26u;
  CHECK( solve_pebbling( graph, params ).outcome ==
         pebbling_outcome::limit_reached );
}
