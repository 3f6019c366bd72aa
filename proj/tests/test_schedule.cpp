/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

#include <doctest.h>

#include <qoracle/lut_mapping.hpp>
#include <qoracle/scheduling.hpp>
#include <qoracle/xag.hpp>

#include <random>
#include <vector>

using namespace qoracle;

namespace
{

lut_network::lut make_lut( std::vector<uint32_t> leaves, uint64_t bits )
{
  lut_network::lut l;
  l.function = truth_table::from_bits( static_cast<uint32_t>( leaves.size() ), bits );
  l.leaves = std::move( leaves );
  return l;
}

/* x0 -> l0 -> l1 -> ... -> l_{length-1} -> output */
lut_network chain_network( uint32_t length )
{
  lut_network network;
  network.num_inputs = 1u;
  for ( uint32_t i = 0u; i < length; ++i )
  {
    network.luts.push_back( make_lut( {i}, 0x1u ) );
  }
  network.outputs.push_back( {network.num_inputs + length - 1u, false} );
  return network;
}

} // namespace

TEST_CASE( "a single lut writes its output directly" )
{
  xag_network xag;
  auto const x = xag.create_input();
  auto const y = xag.create_input();
  xag.create_output( xag.create_and( x, y ) );

  auto const network = map_luts( xag, {}, nullptr );
  auto const schedule = bennett_schedule( network );

  CHECK( schedule.num_qubits == 3u );
  CHECK( schedule.peak_ancillae == 0u );
  REQUIRE( schedule.steps.size() == 1u );
  CHECK( !schedule.steps[0].uncompute );
  CHECK( schedule.steps[0].gate.target == 2u );
  CHECK( schedule.steps[0].gate.controls == std::vector<uint32_t>{0u, 1u} );
  CHECK( validate_schedule( network, schedule ).empty() );
  CHECK( schedule_semantics_match( network, schedule ) );
}

TEST_CASE( "the compute-output-uncompute shape of a four-lut cover" )
{
  xag_network xag;
  auto const x1 = xag.create_input();
  auto const x2 = xag.create_input();
  auto const x3 = xag.create_input();
  auto const a = xag.create_and( x1, x2 );
  auto const b = xag.create_and( a ^ 1u, x3 );
  auto const c = xag.create_xor( x2, x3 );
  xag.create_output( xag.create_and( b, c ) );

  mapper_params params;
  params.cut_size = 2u;
  auto const network = map_luts( xag, params, nullptr );
  REQUIRE( network.num_luts() == 4u );

  auto const schedule = bennett_schedule( network );

  /* three intermediates forward, the output, three intermediates backward */
  REQUIRE( schedule.steps.size() == 7u );
  for ( uint32_t i = 0u; i < 3u; ++i )
  {
    CHECK( schedule.steps[i].game_node == schedule.steps[6u - i].game_node );
    CHECK( !schedule.steps[i].uncompute );
    CHECK( schedule.steps[6u - i].uncompute );
    CHECK( schedule.steps[i].gate == schedule.steps[6u - i].gate );
  }
  CHECK( !schedule.steps[3].uncompute );
  CHECK( schedule.steps[3].gate.target == 3u );

  CHECK( schedule.num_qubits == 7u );
  CHECK( schedule.peak_ancillae == 3u );
  CHECK( validate_schedule( network, schedule ).empty() );
  CHECK( schedule_semantics_match( network, schedule ) );
}

TEST_CASE( "bennett equals the replay of the bennett strategy" )
{
  auto const network = chain_network( 3u );
  auto const graph = build_pebble_graph( network );
  CHECK( schedule_from_strategy( network, graph, bennett_strategy( graph ) ) ==
         bennett_schedule( network ) );
}

TEST_CASE( "chains under bennett" )
{
  auto const network = chain_network( 3u );
  auto const schedule = bennett_schedule( network );
  CHECK( schedule.steps.size() == 5u );
  CHECK( schedule.peak_ancillae == 2u );
  CHECK( schedule.num_qubits == 4u );
  CHECK( validate_schedule( network, schedule ).empty() );
  CHECK( schedule_semantics_match( network, schedule ) );
}

TEST_CASE( "early uncomputing lets ancillae be reused" )
{
  auto const network = chain_network( 4u );
  auto const graph = build_pebble_graph( network );

  /* recompute the first lut to release its qubit early */
  pebbling_strategy strategy{{0u, true},  {1u, true},  {0u, false},
                             {2u, true},  {3u, true},  {2u, false},
                             {0u, true},  {1u, false}, {0u, false}};
  auto const schedule = schedule_from_strategy( network, graph, strategy );

  CHECK( schedule.peak_ancillae == 2u );
  CHECK( schedule.num_qubits == 4u );

  /* the third lut reuses the qubit freed by the first */
  CHECK( schedule.steps[3].gate.target == schedule.steps[0].gate.target );
  CHECK( validate_schedule( network, schedule ).empty() );
  CHECK( schedule_semantics_match( network, schedule ) );

  auto const bennett = bennett_schedule( network );
  CHECK( bennett.peak_ancillae == 3u );
  CHECK( bennett.num_qubits == 5u );
}

TEST_CASE( "illegal strategies are rejected with the offending move" )
{
  auto const network = chain_network( 3u );
  auto const graph = build_pebble_graph( network );

  SUBCASE( "a move before its predecessor" )
  {
    try
    {
      schedule_from_strategy( network, graph, {{1u, true}} );
      FAIL( "expected an exception" );
    }
    catch ( strategy_error const& e )
    {
      REQUIRE( e.move().has_value() );
      CHECK( *e.move() == 0u );
    }
  }

  SUBCASE( "placing twice" )
  {
    try
    {
      schedule_from_strategy( network, graph, {{0u, true}, {0u, true}} );
      FAIL( "expected an exception" );
    }
    catch ( strategy_error const& e )
    {
      CHECK( *e.move() == 1u );
    }
  }

  SUBCASE( "leaving a pebble behind" )
  {
    CHECK_THROWS_AS( schedule_from_strategy(
                         network, graph,
                         {{0u, true}, {1u, true}, {2u, true}, {1u, false}} ),
                     strategy_error );
  }

  SUBCASE( "ending without the output" )
  {
    CHECK_THROWS_AS(
        schedule_from_strategy( network, graph, {{0u, true}, {0u, false}} ),
        strategy_error );
  }
}

TEST_CASE( "outputs that are constants, inputs, or shared luts" )
{
  lut_network network;
  network.num_inputs = 3u;
  network.luts.push_back( make_lut( {0u, 1u}, 0x8u ) );          /* l0 = x0 & x1 */
  network.luts.push_back( make_lut( {3u, 2u}, 0x6u ) );          /* l1 = l0 ^ x2 */
  network.outputs.push_back( {4u, false} );                      /* l1 direct */
  network.outputs.push_back( {3u, true} );                       /* !l0 copy */
  network.outputs.push_back( {0u, false} );                      /* x0 copy */
  network.outputs.push_back( {lut_network::constant_ref, true} );  /* 1 */
  network.outputs.push_back( {lut_network::constant_ref, false} ); /* 0 */

  auto const graph = build_pebble_graph( network );
  CHECK( graph.num_intermediates() == 1u );
  CHECK( graph.outputs.size() == 3u );

  auto const schedule = bennett_schedule( network );
  CHECK( validate_schedule( network, schedule ).empty() );
  CHECK( schedule_semantics_match( network, schedule ) );

  /* l0 computed, l1 direct, copy of l0, copy of x0, l0 uncomputed, flip */
  CHECK( schedule.steps.size() == 6u );
  CHECK( schedule.num_qubits == 3u + 5u + 1u );
}

TEST_CASE( "tampered schedules fail validation" )
{
  auto const network = chain_network( 3u );
  auto schedule = bennett_schedule( network );
  REQUIRE( validate_schedule( network, schedule ).empty() );

  SUBCASE( "dropping the final uncompute leaves an ancilla dirty" )
  {
    schedule.steps.pop_back();
    CHECK( validate_schedule( network, schedule ).find( "dirty" ) != std::string::npos );
  }

  SUBCASE( "reordering computes breaks liveness" )
  {
    std::swap( schedule.steps[0], schedule.steps[1] );
    CHECK( !validate_schedule( network, schedule ).empty() );
  }

  SUBCASE( "a corrupted control function is caught" )
  {
    schedule.steps[1].gate.control_function =
        ~schedule.steps[1].gate.control_function;
    CHECK( validate_schedule( network, schedule ).find( "function" ) != std::string::npos );
  }
}

TEST_CASE( "random mapped networks validate and replay correctly" )
{
  std::mt19937_64 rng( 31337u );
  for ( uint32_t iteration = 0u; iteration < 10u; ++iteration )
  {
    xag_network xag;
    std::vector<uint32_t> literals;
    for ( uint32_t i = 0u; i < 7u; ++i )
    {
      literals.push_back( xag.create_input() );
    }
    for ( uint32_t g = 0u; g < 25u; ++g )
    {
      auto const a = literals[rng() % literals.size()] ^ ( rng() & 1u );
      auto const b = literals[rng() % literals.size()] ^ ( rng() & 1u );
      literals.push_back( ( rng() % 3u ) ? xag.create_and( a, b )
                                         : xag.create_xor( a, b ) );
    }
    xag.create_output( literals.back() ^ ( rng() & 1u ) );
    xag.create_output( literals[10u] ^ ( rng() & 1u ) );

    mapper_params params;
    params.cut_size = 2u + iteration % 3u;
    auto const network = map_luts( xag, params, nullptr );
    auto const schedule = bennett_schedule( network );
    CHECK( validate_schedule( network, schedule ).empty() );
    CHECK( schedule_semantics_match( network, schedule ) );
  }
}
