/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file pebbling.hpp
  \brief SAT-based reversible pebbling of the clean-up game

  The game state after `t` moves is one Boolean per game node.  A bounded
  unrolling asks for a move sequence that starts from the empty state, ends
  with exactly the output nodes pebbled, toggles at most one node per step,
  only toggles nodes whose predecessors are pebbled before and after the
  move, and never holds more pebbles on intermediate nodes than the
  budget.  Intermediate pebbles map to ancilla qubits, so the budget
  bounds the working memory of the compiled circuit; direct and copy
  nodes land on output qubits and are exempt.  The number of steps
  bounds the gate count.

  The horizon grows by two until a strategy appears, since a too-short
  unrolling is refuted quickly.  Budgets no smaller than the number of
  intermediate nodes short-circuit to the two-phase compute/copy/uncompute
  strategy without touching the solver.  When the solver runs out of
  conflicts instead of refuting the horizons, a divide-and-conquer
  recomputation strategy takes over: it trades extra steps for pebbles by
  computing a prefix of the game onto a narrow frontier, planning the rest
  beside it, and unwinding the prefix afterwards.
*/

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "sat_solver.hpp"
#include "scheduling.hpp"

namespace qoracle
{

/*! \brief Collects clauses in memory and prints them in DIMACS CNF form. */
class dimacs_builder
{
public:
  int add_variable() { return ++num_vars_; }

  void add_clause( std::vector<int> const& clause )
  {
    clauses_.push_back( clause );
  }

  int num_variables() const { return num_vars_; }
  size_t num_clauses() const { return clauses_.size(); }

  std::string to_string() const
  {
    std::string out = fmt::format( "p cnf {} {}\n", num_vars_, clauses_.size() );
    for ( auto const& clause : clauses_ )
    {
      for ( int lit : clause )
      {
        fmt::format_to( std::back_inserter( out ), "{} ", lit );
      }
      out += "0\n";
    }
    return out;
  }

private:
  int num_vars_{0};
  std::vector<std::vector<int>> clauses_;
};

/*! \brief Adds clauses forcing at most `bound` of the literals to hold.
 *
 * Uses the sequential-counter encoding; the trivial bounds fall back to
 * nothing or to a single clause.
 */
template<class Sink>
void encode_at_most( Sink& sink, std::vector<int> const& literals, uint32_t bound )
{
  auto const n = static_cast<uint32_t>( literals.size() );
  if ( bound >= n )
  {
    return;
  }
  if ( bound == 0u )
  {
    for ( int lit : literals )
    {
      sink.add_clause( {-lit} );
    }
    return;
  }
  if ( bound + 1u == n )
  {
    std::vector<int> clause;
    for ( int lit : literals )
    {
      clause.push_back( -lit );
    }
    sink.add_clause( clause );
    return;
  }

  /* registers[j] after literal i: at least j+1 of the first i+1 hold */
  std::vector<int> prev( bound ), curr( bound );
  for ( auto& reg : prev )
  {
    reg = sink.add_variable();
  }
  sink.add_clause( {-literals[0], prev[0]} );
  for ( uint32_t j = 1u; j < bound; ++j )
  {
    sink.add_clause( {-prev[j]} );
  }
  for ( uint32_t i = 1u; i + 1u < n; ++i )
  {
    for ( auto& reg : curr )
    {
      reg = sink.add_variable();
    }
    sink.add_clause( {-literals[i], curr[0]} );
    sink.add_clause( {-prev[0], curr[0]} );
    for ( uint32_t j = 1u; j < bound; ++j )
    {
      sink.add_clause( {-literals[i], -prev[j - 1u], curr[j]} );
      sink.add_clause( {-prev[j], curr[j]} );
    }
    sink.add_clause( {-literals[i], -prev[bound - 1u]} );
    std::swap( prev, curr );
  }
  sink.add_clause( {-literals[n - 1u], -prev[bound - 1u]} );
}

/*! \brief Fixed variable layout of an unrolled pebbling instance. */
struct pebbling_layout
{
  uint32_t num_nodes{0u};
  uint32_t num_steps{0u};

  /*! \brief Pebble on `node` after `step` moves, as a DIMACS variable. */
  int state_var( uint32_t node, uint32_t step ) const
  {
    return 1 + static_cast<int>( step * num_nodes + node );
  }

  /*! \brief Move `step` toggles `node`, as a DIMACS variable. */
  int toggle_var( uint32_t node, uint32_t step ) const
  {
    return 1 + static_cast<int>( ( num_steps + 1u ) * num_nodes +
                                 step * num_nodes + node );
  }
};

/*! \brief Unrolls the pebbling game into the sink for a fixed horizon.
 *
 * The sink must be fresh: state and toggle variables are allocated first
 * and must receive the identifiers the returned layout expects.  The
 * budget bounds the pebbles on intermediate nodes; pebbles on direct and
 * copy nodes live on output qubits that exist either way.
 */
template<class Sink>
pebbling_layout encode_pebbling( Sink& sink, pebble_graph const& graph,
                                 uint32_t num_steps, uint32_t budget )
{
  pebbling_layout layout;
  layout.num_nodes = static_cast<uint32_t>( graph.nodes.size() );
  layout.num_steps = num_steps;
  auto const n = layout.num_nodes;

  for ( uint32_t t = 0u; t <= num_steps; ++t )
  {
    for ( uint32_t v = 0u; v < n; ++v )
    {
      [[maybe_unused]] int const id = sink.add_variable();
      assert( id == layout.state_var( v, t ) );
    }
  }
  for ( uint32_t t = 0u; t < num_steps; ++t )
  {
    for ( uint32_t v = 0u; v < n; ++v )
    {
      [[maybe_unused]] int const id = sink.add_variable();
      assert( id == layout.toggle_var( v, t ) );
    }
  }

  /* a toggle is exactly a change of state */
  for ( uint32_t t = 0u; t < num_steps; ++t )
  {
    for ( uint32_t v = 0u; v < n; ++v )
    {
      int const before = layout.state_var( v, t );
      int const after = layout.state_var( v, t + 1u );
      int const toggle = layout.toggle_var( v, t );
      sink.add_clause( {-toggle, before, after} );
      sink.add_clause( {-toggle, -before, -after} );
      sink.add_clause( {toggle, -before, after} );
      sink.add_clause( {toggle, before, -after} );
    }
  }

  /* toggling needs the predecessors pebbled around the move */
  for ( uint32_t t = 0u; t < num_steps; ++t )
  {
    for ( uint32_t v = 0u; v < n; ++v )
    {
      int const toggle = layout.toggle_var( v, t );
      for ( auto p : graph.nodes[v].preds )
      {
        sink.add_clause( {-toggle, layout.state_var( p, t )} );
        sink.add_clause( {-toggle, layout.state_var( p, t + 1u )} );
      }
    }
  }

  /* at most one move per step */
  std::vector<int> literals( n );
  for ( uint32_t t = 0u; t < num_steps; ++t )
  {
    for ( uint32_t v = 0u; v < n; ++v )
    {
      literals[v] = layout.toggle_var( v, t );
    }
    encode_at_most( sink, literals, 1u );
  }

  /* the ancilla budget holds at every point in time; direct and copy
     nodes land on dedicated output qubits and are exempt */
  std::vector<int> ancilla_literals;
  for ( uint32_t t = 0u; t <= num_steps; ++t )
  {
    ancilla_literals.clear();
    for ( uint32_t v = 0u; v < n; ++v )
    {
      if ( graph.nodes[v].role == pebble_graph::node_role::intermediate )
      {
        ancilla_literals.push_back( layout.state_var( v, t ) );
      }
    }
    encode_at_most( sink, ancilla_literals, budget );
  }

  /* start empty, end with exactly the outputs pebbled */
  std::vector<char> is_output( n, 0 );
  for ( auto o : graph.outputs )
  {
    is_output[o] = 1;
  }
  for ( uint32_t v = 0u; v < n; ++v )
  {
    sink.add_clause( {-layout.state_var( v, 0u )} );
  }
  for ( uint32_t v = 0u; v < n; ++v )
  {
    int const var = layout.state_var( v, num_steps );
    sink.add_clause( {is_output[v] ? var : -var} );
  }

  return layout;
}

/*! \brief Reads the move sequence back from a satisfying assignment. */
inline pebbling_strategy decode_strategy( sat_solver const& solver,
                                          pebbling_layout const& layout )
{
  pebbling_strategy strategy;
  for ( uint32_t t = 0u; t < layout.num_steps; ++t )
  {
    for ( uint32_t v = 0u; v < layout.num_nodes; ++v )
    {
      if ( solver.model_value( layout.toggle_var( v, t ) ) )
      {
        strategy.push_back(
            {v, solver.model_value( layout.state_var( v, t + 1u ) )} );
        break;
      }
    }
  }
  return strategy;
}

namespace detail
{

/*! \brief Replays a strategy and checks moves, budget, and final state. */
inline bool strategy_fits( pebble_graph const& graph,
                           pebbling_strategy const& strategy, uint32_t budget )
{
  std::vector<char> pebbled( graph.nodes.size(), 0 );
  uint32_t live = 0u;
  for ( auto const& move : strategy )
  {
    if ( move.node >= graph.nodes.size() ||
         static_cast<bool>( pebbled[move.node] ) == move.place )
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
    pebbled[move.node] = move.place ? 1 : 0;
    if ( graph.nodes[move.node].role == pebble_graph::node_role::intermediate )
    {
      live += move.place ? 1u : -1u;
      if ( live > budget )
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

/*! \brief Topological order that greedily keeps few intermediates alive.
 *
 * Ready nodes are ranked by the change in live pebbles they would cause:
 * placing a node adds its own weight and frees every predecessor whose
 * last remaining reader it is.  Ties keep the smallest index, so the
 * order is deterministic.
 */
inline std::vector<uint32_t> liveness_order( pebble_graph const& graph )
{
  auto const n = static_cast<uint32_t>( graph.nodes.size() );
  std::vector<uint32_t> remaining_succs( n, 0u ), missing_preds( n, 0u );
  std::vector<std::vector<uint32_t>> succs( n );
  for ( uint32_t v = 0u; v < n; ++v )
  {
    missing_preds[v] = static_cast<uint32_t>( graph.nodes[v].preds.size() );
    for ( auto p : graph.nodes[v].preds )
    {
      ++remaining_succs[p];
      succs[p].push_back( v );
    }
  }
  auto const weight = [&]( uint32_t v ) {
    return graph.nodes[v].role == pebble_graph::node_role::intermediate ? 1 : 0;
  };
  std::vector<char> ordered( n, 0 );
  std::vector<uint32_t> order;
  order.reserve( n );
  while ( order.size() < n )
  {
    uint32_t best = n;
    int best_delta = 0;
    for ( uint32_t v = 0u; v < n; ++v )
    {
      if ( ordered[v] || missing_preds[v] != 0u )
      {
        continue;
      }
      int delta = weight( v );
      for ( auto p : graph.nodes[v].preds )
      {
        if ( remaining_succs[p] == 1u )
        {
          delta -= weight( p );
        }
      }
      if ( best == n || delta < best_delta )
      {
        best = v;
        best_delta = delta;
      }
    }
    ordered[best] = 1;
    order.push_back( best );
    for ( auto p : graph.nodes[best].preds )
    {
      --remaining_succs[p];
    }
    for ( auto s : succs[best] )
    {
      --missing_preds[s];
    }
  }
  return order;
}

/*! \brief Recursive planner behind `checkpoint_strategy`. */
class checkpoint_planner
{
public:
  explicit checkpoint_planner( pebble_graph const& graph,
                               std::vector<uint32_t> const* costs = nullptr )
      : graph_( graph ), costs_( costs )
  {
  }

  std::optional<pebbling_strategy> plan( std::vector<uint32_t> const& span,
                                         std::vector<uint32_t> const& exports,
                                         uint32_t budget )
  {
    if ( ++calls_ > max_calls )
    {
      return std::nullopt;
    }

    /* only in-span ancestors of the exports matter */
    std::vector<char> in_span( graph_.nodes.size(), 0 );
    for ( auto v : span )
    {
      in_span[v] = 1;
    }
    std::vector<char> keep( graph_.nodes.size(), 0 );
    std::vector<uint32_t> stack( exports );
    for ( auto v : exports )
    {
      keep[v] = 1;
    }
    while ( !stack.empty() )
    {
      auto const v = stack.back();
      stack.pop_back();
      for ( auto p : graph_.nodes[v].preds )
      {
        if ( in_span[p] && !keep[p] )
        {
          keep[p] = 1;
          stack.push_back( p );
        }
      }
    }
    std::vector<uint32_t> nodes;
    for ( auto v : span )
    {
      if ( keep[v] )
      {
        nodes.push_back( v );
      }
    }

    /* positions of predecessors' last in-span uses */
    auto const size = static_cast<uint32_t>( nodes.size() );
    std::vector<uint32_t> pos( graph_.nodes.size(), 0u );
    for ( uint32_t i = 0u; i < size; ++i )
    {
      pos[nodes[i]] = i;
    }
    std::vector<int64_t> last_use( size, -1 );
    std::vector<std::vector<uint32_t>> succs( size );
    for ( uint32_t i = 0u; i < size; ++i )
    {
      for ( auto p : graph_.nodes[nodes[i]].preds )
      {
        if ( keep[p] )
        {
          last_use[pos[p]] = i;
          succs[pos[p]].push_back( i );
        }
      }
    }
    std::vector<char> exported( size, 0 );
    for ( auto v : exports )
    {
      exported[pos[v]] = 1;
    }

    uint32_t total = 0u;
    for ( auto v : nodes )
    {
      total += weight( v );
    }
    if ( auto base = sweep( nodes, exported, last_use, succs, budget ) )
    {
      return base;
    }

    /* score split points by the peak both halves would reach unsplit;
       everything before the cut that is not handed over gets recomputed,
       so rank equal peaks by that extra cost */
    struct candidate
    {
      uint32_t score;
      uint64_t extra;
      uint32_t cut;
      uint32_t frontier;
    };
    std::vector<candidate> candidates;
    for ( uint32_t cut = 1u; cut < size; ++cut )
    {
      uint32_t wt_a = 0u, wt_f = 0u;
      uint64_t extra = 0u;
      for ( uint32_t i = 0u; i < cut; ++i )
      {
        wt_a += weight( nodes[i] );
        if ( exported[i] || last_use[i] >= static_cast<int64_t>( cut ) )
        {
          wt_f += weight( nodes[i] );
        }
        else
        {
          extra += cost( nodes[i] );
        }
      }
      if ( wt_f >= budget )
      {
        continue;
      }
      candidates.push_back(
          {std::max( wt_a, wt_f + total - wt_a ), extra, cut, wt_f} );
    }
    std::sort( candidates.begin(), candidates.end(),
               []( candidate const& a, candidate const& b ) {
                 return std::tie( a.score, a.extra, a.cut ) <
                        std::tie( b.score, b.extra, b.cut );
               } );
    if ( candidates.size() > max_tries )
    {
      candidates.resize( max_tries );
    }

    std::optional<pebbling_strategy> best;
    uint64_t best_cost = 0u;
    for ( auto const& c : candidates )
    {
      std::vector<uint32_t> part_a( nodes.begin(), nodes.begin() + c.cut );
      std::vector<uint32_t> part_b( nodes.begin() + c.cut, nodes.end() );
      std::vector<uint32_t> frontier, exports_a, exports_b;
      uint32_t wt_exports_b = 0u;
      for ( uint32_t i = 0u; i < c.cut; ++i )
      {
        if ( exported[i] || last_use[i] >= static_cast<int64_t>( c.cut ) )
        {
          frontier.push_back( nodes[i] );
        }
        if ( exported[i] )
        {
          exports_a.push_back( nodes[i] );
        }
      }
      for ( uint32_t i = c.cut; i < size; ++i )
      {
        if ( exported[i] )
        {
          exports_b.push_back( nodes[i] );
          wt_exports_b += weight( nodes[i] );
        }
      }
      if ( wt_exports_b >= budget )
      {
        continue;
      }

      /* the first part is unwound while the second part's exports remain,
         so it gets the reduced budget on both passes */
      auto const first = plan( part_a, frontier, budget - wt_exports_b );
      if ( !first )
      {
        continue;
      }
      auto const second = plan( part_b, exports_b, budget - c.frontier );
      if ( !second )
      {
        continue;
      }
      std::optional<pebbling_strategy> again;
      if ( !exports_a.empty() )
      {
        again = plan( part_a, exports_a, budget - wt_exports_b );
        if ( !again )
        {
          continue;
        }
      }

      pebbling_strategy result( *first );
      result.insert( result.end(), second->begin(), second->end() );
      for ( auto it = first->rbegin(); it != first->rend(); ++it )
      {
        result.push_back( {it->node, !it->place} );
      }
      if ( again )
      {
        result.insert( result.end(), again->begin(), again->end() );
      }
      auto const result_cost = strategy_cost( result );
      if ( !best || result_cost < best_cost )
      {
        best = std::move( result );
        best_cost = result_cost;
      }
    }
    return best;
  }

private:
  uint32_t weight( uint32_t v ) const
  {
    return graph_.nodes[v].role == pebble_graph::node_role::intermediate ? 1u : 0u;
  }

  uint32_t cost( uint32_t v ) const
  {
    return costs_ ? ( *costs_ )[v] : 1u;
  }

  uint64_t strategy_cost( pebbling_strategy const& strategy ) const
  {
    uint64_t sum = 0u;
    for ( auto const& move : strategy )
    {
      sum += cost( move.node );
    }
    return sum;
  }

  /*! \brief Computes ascending and removes each node once it turns dead.
   *
   * A node is removed as soon as its last in-span reader is computed and
   * every non-export successor is gone; its own predecessors cannot leave
   * earlier, so the removal stays legal.  Returns nothing only when the
   * intermediate peak exceeds the budget.
   */
  std::optional<pebbling_strategy>
  sweep( std::vector<uint32_t> const& nodes, std::vector<char> const& exported,
         std::vector<int64_t> const& last_use,
         std::vector<std::vector<uint32_t>> const& succs, uint32_t budget ) const
  {
    auto const size = static_cast<uint32_t>( nodes.size() );
    pebbling_strategy moves;
    std::vector<char> pebbled( size, 0 );
    uint32_t live = 0u;
    for ( uint32_t i = 0u; i < size; ++i )
    {
      moves.push_back( {nodes[i], true} );
      pebbled[i] = 1;
      live += weight( nodes[i] );
      if ( live > budget )
      {
        return std::nullopt;
      }
      for ( uint32_t j = i + 1u; j-- > 0u; )
      {
        if ( !pebbled[j] || exported[j] ||
             last_use[j] > static_cast<int64_t>( i ) )
        {
          continue;
        }
        bool blocked = false;
        for ( auto s : succs[j] )
        {
          if ( pebbled[s] && !exported[s] )
          {
            blocked = true;
            break;
          }
        }
        if ( !blocked )
        {
          moves.push_back( {nodes[j], false} );
          pebbled[j] = 0;
          live -= weight( nodes[j] );
        }
      }
    }
    return moves;
  }

  static constexpr uint32_t max_calls = 10000u;
  static constexpr size_t max_tries = 8u;

  pebble_graph const& graph_;
  std::vector<uint32_t> const* costs_{nullptr};
  uint64_t calls_{0u};
};

} // namespace detail

/*! \brief Builds a recomputation strategy within the budget without a solver.
 *
 * Nodes are visited in a liveness-reducing topological order.  When even
 * the eager clean-up sweep over that order exceeds the budget, the order
 * is split where the frontier read by the remainder is narrow: the prefix
 * is computed garbage-free onto that frontier, the remainder is planned
 * recursively beside it, and the prefix is unwound by replaying its moves
 * backwards.  Splitting recurses until a part fits the budget outright;
 * the result is a legal strategy whose intermediate pebble count never
 * exceeds the budget, at the price of recomputation steps.  Returns
 * nothing when no tried split fits.
 *
 * When per-node toggle costs are given, ties between splits of equal peak
 * break toward the cheaper recomputation, and the cheapest explored
 * strategy wins overall.
 */
inline std::optional<pebbling_strategy>
checkpoint_strategy( pebble_graph const& graph, uint32_t budget,
                     std::vector<uint32_t> const* toggle_costs = nullptr )
{
  auto const span = detail::liveness_order( graph );
  std::vector<uint32_t> exports( graph.outputs );
  std::sort( exports.begin(), exports.end() );
  detail::checkpoint_planner planner( graph, toggle_costs );
  auto strategy = planner.plan( span, exports, budget );
  if ( strategy && !detail::strategy_fits( graph, *strategy, budget ) )
  {
    return std::nullopt;
  }
  return strategy;
}

struct pebbling_params
{
  uint32_t pebble_budget{0u};
  uint32_t max_steps{64u};
  uint64_t conflict_limit{50000u};

  /*! \brief Stops scanning horizons once this many conflicts accumulate. */
  uint64_t cumulative_limit{500000u};

  /*! \brief Per-node gate costs steering the fallback; empty means unit. */
  std::vector<uint32_t> toggle_costs{};
};

enum class pebbling_outcome
{
  found,        /*!< a strategy within the budget and horizon */
  exhausted,    /*!< refuted for every horizon up to the step bound */
  limit_reached /*!< the conflict limit struck and no fallback fit */
};

struct pebbling_result
{
  pebbling_outcome outcome{pebbling_outcome::exhausted};
  pebbling_strategy strategy;
  uint32_t steps_used{0u};
  uint64_t conflicts{0u};
  uint32_t calls{0u};
};

/*! \brief Searches for a pebbling strategy within the pebble budget.
 *
 * Horizons start at a structural lower bound (every non-output ancestor of
 * an output is pebbled and cleaned again, every output pebbled once) and
 * grow by two until `max_steps` or until the accumulated conflicts trip
 * `cumulative_limit`.  Budgets no smaller than the number of intermediate
 * nodes return the two-phase strategy directly.  `exhausted` is only
 * reported when every horizon was refuted within its conflict budget;
 * when the search is cut off by a limit instead, a checkpoint strategy
 * within `max_steps` still counts as `found`.
 */
inline pebbling_result solve_pebbling( pebble_graph const& graph,
                                       pebbling_params const& params )
{
  pebbling_result result;
  auto const n = static_cast<uint32_t>( graph.nodes.size() );
  if ( n == 0u )
  {
    result.outcome = pebbling_outcome::found;
    return result;
  }
  if ( params.pebble_budget >= graph.num_intermediates() )
  {
    result.outcome = pebbling_outcome::found;
    result.strategy = bennett_strategy( graph );
    result.steps_used = static_cast<uint32_t>( result.strategy.size() );
    return result;
  }

  std::vector<char> needed( n, 0 );
  std::vector<uint32_t> stack;
  for ( auto o : graph.outputs )
  {
    if ( !needed[o] )
    {
      needed[o] = 1;
      stack.push_back( o );
    }
  }
  while ( !stack.empty() )
  {
    auto const v = stack.back();
    stack.pop_back();
    for ( auto p : graph.nodes[v].preds )
    {
      if ( !needed[p] )
      {
        needed[p] = 1;
        stack.push_back( p );
      }
    }
  }
  uint32_t ancestors = 0u;
  for ( uint32_t v = 0u; v < n; ++v )
  {
    ancestors += needed[v];
  }
  ancestors -= static_cast<uint32_t>( graph.outputs.size() );
  uint32_t const lower =
      2u * ancestors + static_cast<uint32_t>( graph.outputs.size() );

  /* a horizon whose call hits the conflict limit is treated like a refuted
     one: a longer horizon is often much easier to satisfy */
  bool limited = false;
  for ( uint32_t steps = lower; steps <= params.max_steps; steps += 2u )
  {
    if ( result.conflicts >= params.cumulative_limit )
    {
      limited = true;
      break;
    }
    sat_solver solver;
    auto const layout =
        encode_pebbling( solver, graph, steps, params.pebble_budget );
    ++result.calls;
    auto const verdict = solver.solve( params.conflict_limit );
    result.conflicts += solver.conflicts();
    if ( verdict == sat_result::limit_reached )
    {
      limited = true;
      continue;
    }
    if ( verdict == sat_result::satisfiable )
    {
      result.outcome = pebbling_outcome::found;
      result.strategy = decode_strategy( solver, layout );
      result.steps_used = static_cast<uint32_t>( result.strategy.size() );
      return result;
    }
  }
  if ( limited )
  {
    /* exhaustion is a proof, but a conflict limit is not: fall back to a
       constructed recomputation strategy before giving up */
    auto const* costs =
        params.toggle_costs.empty() ? nullptr : &params.toggle_costs;
    if ( auto strategy =
             checkpoint_strategy( graph, params.pebble_budget, costs );
         strategy && strategy->size() <= params.max_steps )
    {
      result.outcome = pebbling_outcome::found;
      result.strategy = std::move( *strategy );
      result.steps_used = static_cast<uint32_t>( result.strategy.size() );
      return result;
    }
    result.outcome = pebbling_outcome::limit_reached;
  }
  return result;
}

} // namespace qoracle
