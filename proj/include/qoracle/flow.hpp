/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file flow.hpp
  \brief End-to-end synthesis flow and the gate/qubit trade-off matrix

  `run_flow` drives one network through mapping, clean-up scheduling, and
  phase synthesis into a {CNOT, H, Rz} circuit.  `run_matrix` compares the
  baseline and spectral mappers under Bennett and pebbled clean-up on a set
  of miter benchmarks and reports qubit/gate trade-offs per mode.
*/

#pragma once

#include "benchmarks.hpp"
#include "circuit.hpp"
#include "lut_mapping.hpp"
#include "pebbling.hpp"
#include "qasm.hpp"
#include "scheduling.hpp"
#include "simulation.hpp"
#include "stg_synthesis.hpp"
#include "xag.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoracle
{

class flow_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class cleanup_strategy
{
  bennett,
  pebble
};

/*! \brief Pebble budget, either absolute or relative to the Bennett peak. */
struct pebble_budget_spec
{
  enum class kind
  {
    absolute,     /*!< budget = value */
    bennett_minus /*!< budget = Bennett ancilla count - value */
  };

  kind mode{kind::bennett_minus};
  uint32_t value{1u};
};

struct flow_params
{
  mapper_params mapping;

  cleanup_strategy strategy{cleanup_strategy::bennett};
  pebble_budget_spec budget;

  /*! \brief Horizon for the pebbling search; 0 picks 6 * nodes + 64. */
  uint32_t max_steps{0u};
  uint64_t conflict_limit{50000u};

  /*! \brief Extra pebbles granted one by one when the search gives up. */
  uint32_t max_relaxations{5u};

  /*! \brief Games with more nodes try the checkpoint strategy before the
   * solver, whose encodings grow too large on them.  0 always tries it
   * first. */
  uint32_t sat_node_limit{48u};

  bool verify{false};

  /*! \brief Verification is skipped when inputs + outputs exceed this. */
  uint32_t verify_input_cap{12u};
};

struct flow_result
{
  lut_network mapped;
  mapping_stats map_stats;
  stg_schedule schedule;
  circuit compiled{0u};
  register_layout layout;

  cleanup_strategy strategy{cleanup_strategy::bennett};
  uint32_t pebble_budget{0u}; /*!< budget of the accepted strategy; 0 for Bennett */
  uint32_t relaxations{0u};
  uint32_t strategy_steps{0u};
  uint32_t sat_calls{0u};
  uint64_t sat_conflicts{0u};

  bool verified{false}; /*!< verification ran */
  bool verify_ok{false};
  double max_deviation{0.0};
};

/*! \brief Compiles `xag` into a garbage-free oracle circuit. */
inline flow_result run_flow( xag_network const& xag, flow_params const& params )
{
  flow_result result;
  result.strategy = params.strategy;
  result.mapped = map_luts( xag, params.mapping, &result.map_stats );

  auto const graph = build_pebble_graph( result.mapped );
  auto const num_nodes = static_cast<uint32_t>( graph.nodes.size() );
  auto const bennett_ancillae = graph.num_intermediates();

  pebbling_strategy strategy;
  if ( params.strategy == cleanup_strategy::bennett || bennett_ancillae == 0u )
  {
    strategy = bennett_strategy( graph );
  }
  else
  {
    uint32_t budget;
    if ( params.budget.mode == pebble_budget_spec::kind::absolute )
    {
      budget = params.budget.value;
    }
    else
    {
      budget = params.budget.value < bennett_ancillae
                   ? bennett_ancillae - params.budget.value
                   : 1u;
    }
    if ( budget == 0u )
    {
      budget = 1u;
    }

    pebbling_params search;
    search.max_steps =
        params.max_steps > 0u ? params.max_steps : 6u * num_nodes + 64u;
    search.conflict_limit = params.conflict_limit;
    search.cumulative_limit = 10u * params.conflict_limit;
    search.toggle_costs = toggle_costs( result.mapped, graph );

    bool found = false;
    if ( num_nodes > params.sat_node_limit )
    {
      if ( auto direct =
               checkpoint_strategy( graph, budget, &search.toggle_costs );
           direct && direct->size() <= search.max_steps )
      {
        strategy = std::move( *direct );
        result.pebble_budget = budget;
        found = true;
      }
    }
    pebbling_outcome last_outcome{pebbling_outcome::exhausted};
    for ( uint32_t relax = 0u; !found && relax <= params.max_relaxations;
          ++relax )
    {
      search.pebble_budget = budget + relax;
      auto outcome = solve_pebbling( graph, search );
      result.sat_calls += outcome.calls;
      result.sat_conflicts += outcome.conflicts;
      last_outcome = outcome.outcome;
      if ( outcome.outcome == pebbling_outcome::found )
      {
        strategy = std::move( outcome.strategy );
        result.pebble_budget = search.pebble_budget;
        result.relaxations = relax;
        found = true;
        break;
      }
    }
    if ( !found )
    {
      throw flow_error( fmt::format(
          "pebbling {} with budget {} after {} relaxations",
          last_outcome == pebbling_outcome::exhausted ? "is infeasible"
                                                      : "hit the conflict limit",
          budget + params.max_relaxations, params.max_relaxations ) );
    }
  }

  result.strategy_steps = static_cast<uint32_t>( strategy.size() );
  result.schedule = schedule_from_strategy( result.mapped, graph, strategy );
  result.compiled = circuit_from_schedule( result.schedule );
  result.layout = {xag.num_inputs(), xag.num_outputs()};

  if ( params.verify &&
       xag.num_inputs() + xag.num_outputs() <= params.verify_input_cap )
  {
    auto const check = verify_oracle(
        result.compiled, xag.num_inputs(), xag.num_outputs(),
        [&]( std::vector<bool> const& inputs ) { return xag.evaluate( inputs ); } );
    result.verified = true;
    result.verify_ok = check.ok;
    result.max_deviation = check.max_deviation;
  }
  return result;
}

/*! \brief Serializes configuration, sizes, and gate counts of one run.
 *
 * The schema is stable and free of timing data, so equal configurations
 * produce byte-identical stats.
 */
inline nlohmann::ordered_json flow_stats_json( std::string const& benchmark,
                                               xag_network const& xag,
                                               flow_params const& params,
                                               flow_result const& result )
{
  nlohmann::ordered_json stats;
  stats["benchmark"] = benchmark;
  stats["config"] = {
      {"mapper", params.mapping.mode == mapper_params::cost_mode::spectral
                     ? "spectral"
                     : "baseline"},
      {"k", params.mapping.cut_size},
      {"priority_cuts", params.mapping.cut_limit},
      {"xor_blocks", params.mapping.use_xor_blocks},
      {"strategy", result.strategy == cleanup_strategy::bennett ? "bennett"
                                                                : "pebble"},
      {"max_steps", params.max_steps},
      {"conflict_limit", params.conflict_limit}};
  stats["network"] = {{"inputs", xag.num_inputs()},
                      {"outputs", xag.num_outputs()},
                      {"and_gates", xag.num_and_gates()},
                      {"xor_gates", xag.num_gates() - xag.num_and_gates()}};
  stats["mapping"] = {{"luts", result.map_stats.lut_count},
                      {"xor_blocks", result.map_stats.xor_block_count},
                      {"total_cost", result.map_stats.total_cost},
                      {"max_leaves", result.map_stats.max_leaves}};
  stats["cleanup"] = {{"steps", result.strategy_steps},
                      {"pebble_budget", result.pebble_budget},
                      {"relaxations", result.relaxations},
                      {"sat_calls", result.sat_calls},
                      {"sat_conflicts", result.sat_conflicts}};
  stats["circuit"] = {{"qubits", result.compiled.num_qubits()},
                      {"ancillae", result.schedule.peak_ancillae},
                      {"cnot_gates", result.compiled.num_cnots()},
                      {"hadamard_gates", result.compiled.num_hadamards()},
                      {"rz_gates", result.compiled.num_rotations()},
                      {"total_gates", result.compiled.num_gates()}};
  stats["verification"] = {{"enabled", result.verified},
                           {"ok", result.verify_ok},
                           {"max_deviation", result.max_deviation}};
  return stats;
}

/*! \brief The five clean-up/mapper combinations of the trade-off matrix. */
enum class matrix_mode
{
  mb,         /*!< baseline mapper, Bennett clean-up */
  sb,         /*!< spectral mapper, Bennett clean-up */
  mp,         /*!< baseline mapper, pebbled with one ancilla less */
  sp_match_q, /*!< spectral mapper, pebbled to at most the M/B qubits */
  sp_match_g  /*!< S/P with fewest qubits while gates stay within M/B */
};

static constexpr matrix_mode all_matrix_modes[] = {
    matrix_mode::mb, matrix_mode::sb, matrix_mode::mp, matrix_mode::sp_match_q,
    matrix_mode::sp_match_g};

inline std::string mode_name( matrix_mode mode )
{
  switch ( mode )
  {
  case matrix_mode::mb:
    return "M/B";
  case matrix_mode::sb:
    return "S/B";
  case matrix_mode::mp:
    return "M/P";
  case matrix_mode::sp_match_q:
    return "S/P_match_q";
  default:
    return "S/P_match_g";
  }
}

/*! \brief Short form used in file names. */
inline std::string mode_key( matrix_mode mode )
{
  switch ( mode )
  {
  case matrix_mode::mb:
    return "mb";
  case matrix_mode::sb:
    return "sb";
  case matrix_mode::mp:
    return "mp";
  case matrix_mode::sp_match_q:
    return "spq";
  default:
    return "spg";
  }
}

struct matrix_params
{
  std::vector<miter_spec> benchmarks;

  uint32_t cut_size{4u};
  uint32_t cut_limit{8u};
  uint32_t max_steps{0u};
  uint64_t conflict_limit{50000u};
  uint32_t max_relaxations{5u};
  bool verify{false};
  uint32_t verify_input_cap{12u};
};

/*! \brief The three miter families over the given word widths, fault-free. */
inline std::vector<miter_spec> default_matrix_benchmarks(
    std::vector<uint32_t> const& widths = {2u, 3u, 4u} )
{
  std::vector<miter_spec> specs;
  for ( auto width : widths )
  {
    for ( auto family : {miter_family::add_associativity,
                         miter_family::mult_associativity,
                         miter_family::mult_distributivity} )
    {
      specs.push_back( {family, width, 0u, 1u} );
    }
  }
  return specs;
}

inline std::string benchmark_name( miter_spec const& spec )
{
  auto name = fmt::format( "{}_w{}", family_name( spec.family ), spec.width );
  if ( spec.num_faults > 0u )
  {
    name += fmt::format( "_f{}_s{}", spec.num_faults, spec.seed );
  }
  return name;
}

struct matrix_cell
{
  std::string benchmark;
  matrix_mode mode{matrix_mode::mb};
  bool ok{false};
  std::string error;

  uint32_t qubits{0u};
  uint32_t total_gates{0u};
  uint32_t cnot_gates{0u};
  uint32_t rz_gates{0u};
  uint32_t hadamard_gates{0u};
  uint32_t pebble_budget{0u};
  uint32_t relaxations{0u};

  std::string qasm;
  nlohmann::ordered_json stats;
};

struct matrix_result
{
  std::vector<matrix_cell> cells; /*!< benchmark-major, mode order as above */

  matrix_cell const* find( std::string const& benchmark,
                           matrix_mode mode ) const
  {
    for ( auto const& cell : cells )
    {
      if ( cell.benchmark == benchmark && cell.mode == mode )
      {
        return &cell;
      }
    }
    return nullptr;
  }

  std::string to_markdown() const;
  std::string to_csv() const;
};

namespace detail
{

inline flow_params mode_flow_params( matrix_params const& params,
                                     matrix_mode mode )
{
  flow_params flow;
  flow.mapping.cut_size = params.cut_size;
  flow.mapping.cut_limit = params.cut_limit;
  bool const spectral = mode != matrix_mode::mb && mode != matrix_mode::mp;
  flow.mapping.mode = spectral ? mapper_params::cost_mode::spectral
                               : mapper_params::cost_mode::baseline_area;
  flow.mapping.use_xor_blocks = spectral;
  flow.strategy = ( mode == matrix_mode::mb || mode == matrix_mode::sb )
                      ? cleanup_strategy::bennett
                      : cleanup_strategy::pebble;
  flow.max_steps = params.max_steps;
  flow.conflict_limit = params.conflict_limit;
  flow.max_relaxations = params.max_relaxations;
  flow.verify = params.verify;
  flow.verify_input_cap = params.verify_input_cap;
  return flow;
}

inline matrix_cell make_cell( std::string const& benchmark, matrix_mode mode,
                              xag_network const& xag, flow_params const& flow,
                              flow_result const& result )
{
  matrix_cell cell;
  cell.benchmark = benchmark;
  cell.mode = mode;
  cell.ok = !result.verified || result.verify_ok;
  if ( !cell.ok )
  {
    cell.error = "verification failed";
  }
  cell.qubits = result.compiled.num_qubits();
  cell.total_gates = result.compiled.num_gates();
  cell.cnot_gates = result.compiled.num_cnots();
  cell.rz_gates = result.compiled.num_rotations();
  cell.hadamard_gates = result.compiled.num_hadamards();
  cell.pebble_budget = result.pebble_budget;
  cell.relaxations = result.relaxations;
  cell.qasm = write_qasm_string( result.compiled, result.layout );
  cell.stats = flow_stats_json( benchmark, xag, flow, result );
  cell.stats["mode"] = mode_name( mode );
  return cell;
}

inline matrix_cell failed_cell( std::string const& benchmark, matrix_mode mode,
                                std::string const& message )
{
  matrix_cell cell;
  cell.benchmark = benchmark;
  cell.mode = mode;
  cell.ok = false;
  cell.error = message;
  return cell;
}

} // namespace detail

/*! \brief Runs all modes over all benchmarks; failures stay per-cell. */
inline matrix_result run_matrix( matrix_params const& params )
{
  matrix_result result;
  for ( auto const& spec : params.benchmarks )
  {
    auto const name = benchmark_name( spec );
    auto const xag = build_miter( spec );

    /* reference run: baseline mapper with Bennett clean-up */
    auto const mb_flow = detail::mode_flow_params( params, matrix_mode::mb );
    flow_result mb;
    bool have_mb = false;
    try
    {
      mb = run_flow( xag, mb_flow );
      result.cells.push_back(
          detail::make_cell( name, matrix_mode::mb, xag, mb_flow, mb ) );
      have_mb = true;
    }
    catch ( std::exception const& e )
    {
      result.cells.push_back(
          detail::failed_cell( name, matrix_mode::mb, e.what() ) );
    }

    /* spectral mapper with Bennett clean-up */
    auto const sb_flow = detail::mode_flow_params( params, matrix_mode::sb );
    try
    {
      auto const sb = run_flow( xag, sb_flow );
      result.cells.push_back(
          detail::make_cell( name, matrix_mode::sb, xag, sb_flow, sb ) );
    }
    catch ( std::exception const& e )
    {
      result.cells.push_back(
          detail::failed_cell( name, matrix_mode::sb, e.what() ) );
    }

    /* baseline mapper pebbled below its own Bennett ancilla count */
    auto mp_flow = detail::mode_flow_params( params, matrix_mode::mp );
    mp_flow.budget = {pebble_budget_spec::kind::bennett_minus, 1u};
    try
    {
      auto const mp = run_flow( xag, mp_flow );
      result.cells.push_back(
          detail::make_cell( name, matrix_mode::mp, xag, mp_flow, mp ) );
    }
    catch ( std::exception const& e )
    {
      result.cells.push_back(
          detail::failed_cell( name, matrix_mode::mp, e.what() ) );
    }

    /* spectral mapper pebbled to stay within the M/B qubit count */
    flow_result spq;
    flow_params spq_flow = detail::mode_flow_params( params, matrix_mode::sp_match_q );
    bool have_spq = false;
    if ( !have_mb )
    {
      result.cells.push_back( detail::failed_cell(
          name, matrix_mode::sp_match_q, "reference run failed" ) );
    }
    else
    {
      try
      {
        /* spectral covers needing no more ancillae than the target resolve
           without a solver call */
        spq_flow.budget = {pebble_budget_spec::kind::absolute,
                           mb.schedule.peak_ancillae};
        spq = run_flow( xag, spq_flow );
        result.cells.push_back( detail::make_cell(
            name, matrix_mode::sp_match_q, xag, spq_flow, spq ) );
        have_spq = true;
      }
      catch ( std::exception const& e )
      {
        result.cells.push_back(
            detail::failed_cell( name, matrix_mode::sp_match_q, e.what() ) );
      }
    }

    /* keep buying qubits with gates while staying within the M/B gates */
    if ( !have_mb || !have_spq )
    {
      result.cells.push_back( detail::failed_cell(
          name, matrix_mode::sp_match_g, "reference run failed" ) );
    }
    else
    {
      uint32_t const gate_cap = mb.compiled.num_gates();
      flow_result best = spq;
      flow_params best_flow = spq_flow;
      uint32_t budget = spq.schedule.peak_ancillae;
      while ( budget > 1u )
      {
        flow_params next = detail::mode_flow_params( params, matrix_mode::sp_match_g );
        next.budget = {pebble_budget_spec::kind::absolute, budget - 1u};
        next.max_relaxations = 0u;
        /* the walk probes many budgets, so lead with the checkpoint
           strategy and keep the solver fallback short */
        next.sat_node_limit = 0u;
        next.conflict_limit = std::max<uint64_t>( params.conflict_limit / 10u, 1u );
        try
        {
          auto candidate = run_flow( xag, next );
          if ( candidate.compiled.num_gates() > gate_cap )
          {
            break;
          }
          best = std::move( candidate );
          best_flow = next;
          budget = best.schedule.peak_ancillae;
        }
        catch ( flow_error const& )
        {
          break;
        }
      }
      result.cells.push_back( detail::make_cell(
          name, matrix_mode::sp_match_g, xag, best_flow, best ) );
    }
  }
  return result;
}

namespace detail
{

struct matrix_summary
{
  std::vector<std::string> benchmarks;
  double qubit_percent[5]{};
  double gate_percent[5]{};
  uint32_t compared{0u};
};

inline matrix_summary summarize( matrix_result const& result )
{
  matrix_summary summary;
  for ( auto const& cell : result.cells )
  {
    if ( cell.mode == matrix_mode::mb )
    {
      summary.benchmarks.push_back( cell.benchmark );
    }
  }
  for ( auto const& name : summary.benchmarks )
  {
    auto const* mb = result.find( name, matrix_mode::mb );
    if ( mb == nullptr || !mb->ok || mb->qubits == 0u ||
         mb->total_gates == 0u )
    {
      continue;
    }
    bool complete = true;
    for ( auto mode : all_matrix_modes )
    {
      auto const* cell = result.find( name, mode );
      complete = complete && cell != nullptr && cell->ok;
    }
    if ( !complete )
    {
      continue;
    }
    ++summary.compared;
    for ( uint32_t m = 0u; m < 5u; ++m )
    {
      auto const* cell = result.find( name, all_matrix_modes[m] );
      summary.qubit_percent[m] += 100.0 * cell->qubits / mb->qubits;
      summary.gate_percent[m] += 100.0 * cell->total_gates / mb->total_gates;
    }
  }
  if ( summary.compared > 0u )
  {
    for ( uint32_t m = 0u; m < 5u; ++m )
    {
      summary.qubit_percent[m] /= summary.compared;
      summary.gate_percent[m] /= summary.compared;
    }
  }
  return summary;
}

} // namespace detail

inline std::string matrix_result::to_markdown() const
{
  auto const summary = detail::summarize( *this );
  std::string text = "| benchmark |";
  for ( auto mode : all_matrix_modes )
  {
    text += fmt::format( " {} qubits | {} gates |", mode_name( mode ),
                         mode_name( mode ) );
  }
  text += "\n|---|";
  for ( uint32_t m = 0u; m < 10u; ++m )
  {
    text += "---:|";
  }
  text += "\n";

  std::vector<std::string> footnotes;
  for ( auto const& name : summary.benchmarks )
  {
    text += fmt::format( "| {} |", name );
    for ( auto mode : all_matrix_modes )
    {
      auto const* cell = find( name, mode );
      if ( cell == nullptr || !cell->ok )
      {
        text += " - | - |";
        if ( cell != nullptr && !cell->error.empty() )
        {
          footnotes.push_back( fmt::format( "{} {}: {}", name,
                                            mode_name( mode ), cell->error ) );
        }
        continue;
      }
      std::string mark;
      if ( cell->relaxations > 0u )
      {
        mark = "*";
        footnotes.push_back(
            fmt::format( "{} {}: pebble budget relaxed {} time(s)", name,
                         mode_name( mode ), cell->relaxations ) );
      }
      text += fmt::format( " {}{} | {} |", cell->qubits, mark,
                           cell->total_gates );
    }
    text += "\n";
  }

  if ( summary.compared > 0u )
  {
    text += "| average vs M/B (%) |";
    for ( uint32_t m = 0u; m < 5u; ++m )
    {
      text += fmt::format( " {:.1f} | {:.1f} |", summary.qubit_percent[m],
                           summary.gate_percent[m] );
    }
    text += "\n";
  }
  for ( auto const& note : footnotes )
  {
    text += fmt::format( "\n\\* {}", note );
  }
  if ( !footnotes.empty() )
  {
    text += "\n";
  }
  return text;
}

inline std::string matrix_result::to_csv() const
{
  auto const summary = detail::summarize( *this );
  std::string text = "benchmark";
  for ( auto mode : all_matrix_modes )
  {
    text += fmt::format( ",{0}_qubits,{0}_gates,{0}_relaxations",
                         mode_key( mode ) );
  }
  text += "\n";
  for ( auto const& name : summary.benchmarks )
  {
    text += name;
    for ( auto mode : all_matrix_modes )
    {
      auto const* cell = find( name, mode );
      if ( cell == nullptr || !cell->ok )
      {
        text += ",,,";
      }
      else
      {
        text += fmt::format( ",{},{},{}", cell->qubits, cell->total_gates,
                             cell->relaxations );
      }
    }
    text += "\n";
  }
  if ( summary.compared > 0u )
  {
    text += "average_vs_mb_percent";
    for ( uint32_t m = 0u; m < 5u; ++m )
    {
      text += fmt::format( ",{:.1f},{:.1f},", summary.qubit_percent[m],
                           summary.gate_percent[m] );
    }
    text += "\n";
  }
  return text;
}

} // namespace qoracle
