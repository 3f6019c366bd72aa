/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

#include <doctest.h>

#include <cstdint>
#include <vector>

#include <qoracle/sat_solver.hpp>

using namespace qoracle;

namespace
{

/* reference check: does any of the 2^n assignments satisfy the formula? */
bool brute_force_satisfiable( int num_vars,
                              std::vector<std::vector<int>> const& clauses )
{
  for ( uint32_t assignment = 0u; assignment < ( 1u << num_vars ); ++assignment )
  {
    bool all = true;
    for ( auto const& clause : clauses )
    {
      bool sat = false;
      for ( int lit : clause )
      {
        int const var = std::abs( lit ) - 1;
        bool const val = ( ( assignment >> var ) & 1u ) != 0u;
        if ( val == ( lit > 0 ) )
        {
          sat = true;
          break;
        }
      }
      if ( !sat )
      {
        all = false;
        break;
      }
    }
    if ( all )
    {
      return true;
    }
  }
  return false;
}

bool model_satisfies( sat_solver const& solver,
                      std::vector<std::vector<int>> const& clauses )
{
  for ( auto const& clause : clauses )
  {
    bool sat = false;
    for ( int lit : clause )
    {
      if ( solver.model_value( std::abs( lit ) ) == ( lit > 0 ) )
      {
        sat = true;
        break;
      }
    }
    if ( !sat )
    {
      return false;
    }
  }
  return true;
}

uint64_t splitmix64( uint64_t& state )
{
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

} // namespace

TEST_CASE( "empty formula is satisfiable" )
{
  sat_solver solver;
  CHECK( solver.solve() == sat_result::satisfiable );
}

TEST_CASE( "single unit clause" )
{
  sat_solver solver;
  int const x = solver.add_variable();
  solver.add_clause( {x} );
  REQUIRE( solver.solve() == sat_result::satisfiable );
  CHECK( solver.model_value( x ) );
}

TEST_CASE( "contradicting units are unsatisfiable" )
{
  sat_solver solver;
  int const x = solver.add_variable();
  solver.add_clause( {x} );
  solver.add_clause( {-x} );
  CHECK( solver.solve() == sat_result::unsatisfiable );
}

TEST_CASE( "empty clause is unsatisfiable" )
{
  sat_solver solver;
  solver.add_variable();
  solver.add_clause( {} );
  CHECK( solver.solve() == sat_result::unsatisfiable );
}

TEST_CASE( "tautological clause is dropped" )
{
  sat_solver solver;
  int const x = solver.add_variable();
  int const y = solver.add_variable();
  solver.add_clause( {x, -x} );
  solver.add_clause( {-y} );
  REQUIRE( solver.solve() == sat_result::satisfiable );
  CHECK( !solver.model_value( y ) );
}

TEST_CASE( "implication chain propagates" )
{
  sat_solver solver;
  std::vector<int> vars;
  for ( int i = 0; i < 10; ++i )
  {
    vars.push_back( solver.add_variable() );
  }
  for ( int i = 0; i + 1 < 10; ++i )
  {
    solver.add_clause( {-vars[i], vars[i + 1]} );
  }
  solver.add_clause( {vars[0]} );
  REQUIRE( solver.solve() == sat_result::satisfiable );
  for ( int v : vars )
  {
    CHECK( solver.model_value( v ) );
  }
}

TEST_CASE( "xor constraints force a unique model" )
{
  /* x1 ^ x2 = 1, x2 ^ x3 = 0, x1 = 0  =>  x2 = 1, x3 = 1 */
  sat_solver solver;
  int const x1 = solver.add_variable();
  int const x2 = solver.add_variable();
  int const x3 = solver.add_variable();
  solver.add_clause( {x1, x2} );
  solver.add_clause( {-x1, -x2} );
  solver.add_clause( {-x2, x3} );
  solver.add_clause( {x2, -x3} );
  solver.add_clause( {-x1} );
  REQUIRE( solver.solve() == sat_result::satisfiable );
  CHECK( !solver.model_value( x1 ) );
  CHECK( solver.model_value( x2 ) );
  CHECK( solver.model_value( x3 ) );
}

TEST_CASE( "pigeonhole with four pigeons and three holes" )
{
  /* p(i,j): pigeon i sits in hole j */
  sat_solver solver;
  int p[4][3];
  for ( auto& row : p )
  {
    for ( auto& cell : row )
    {
      cell = solver.add_variable();
    }
  }
  for ( int i = 0; i < 4; ++i )
  {
    solver.add_clause( {p[i][0], p[i][1], p[i][2]} );
  }
  for ( int j = 0; j < 3; ++j )
  {
    for ( int i1 = 0; i1 < 4; ++i1 )
    {
      for ( int i2 = i1 + 1; i2 < 4; ++i2 )
      {
        solver.add_clause( {-p[i1][j], -p[i2][j]} );
      }
    }
  }
  CHECK( solver.solve() == sat_result::unsatisfiable );
  CHECK( solver.conflicts() > 0u );
}

TEST_CASE( "search stays sound across many restarts" )
{
  sat_solver solver;
  int const pigeons = 8;
  int const holes = 7;
  std::vector<std::vector<int>> p( pigeons, std::vector<int>( holes ) );
  for ( auto& row : p )
  {
    for ( auto& cell : row )
    {
      cell = solver.add_variable();
    }
  }
  for ( int i = 0; i < pigeons; ++i )
  {
    std::vector<int> clause;
    for ( int j = 0; j < holes; ++j )
    {
      clause.push_back( p[i][j] );
    }
    solver.add_clause( clause );
  }
  for ( int j = 0; j < holes; ++j )
  {
    for ( int i1 = 0; i1 < pigeons; ++i1 )
    {
      for ( int i2 = i1 + 1; i2 < pigeons; ++i2 )
      {
        solver.add_clause( {-p[i1][j], -p[i2][j]} );
      }
    }
  }
  CHECK( solver.solve() == sat_result::unsatisfiable );
  /* enough conflicts to go through several restart cycles */
  CHECK( solver.conflicts() > 1000u );
}

TEST_CASE( "conflict limit stops the search" )
{
  /* pigeonhole with seven pigeons needs far more than two conflicts */
  sat_solver solver;
  int const pigeons = 7;
  int const holes = 6;
  std::vector<std::vector<int>> p( pigeons, std::vector<int>( holes ) );
  for ( auto& row : p )
  {
    for ( auto& cell : row )
    {
      cell = solver.add_variable();
    }
  }
  for ( int i = 0; i < pigeons; ++i )
  {
    std::vector<int> clause;
    for ( int j = 0; j < holes; ++j )
    {
      clause.push_back( p[i][j] );
    }
    solver.add_clause( clause );
  }
  for ( int j = 0; j < holes; ++j )
  {
    for ( int i1 = 0; i1 < pigeons; ++i1 )
    {
      for ( int i2 = i1 + 1; i2 < pigeons; ++i2 )
      {
        solver.add_clause( {-p[i1][j], -p[i2][j]} );
      }
    }
  }
  CHECK( solver.solve( 2u ) == sat_result::limit_reached );
}

TEST_CASE( "random 3-SAT agrees with exhaustive search" )
{
  uint64_t state = 0x5eedull;
  int sat_seen = 0;
  int unsat_seen = 0;
  for ( int round = 0; round < 200; ++round )
  {
    int const num_vars = 8 + static_cast<int>( splitmix64( state ) % 5u );
    int const num_clauses =
        3 * num_vars + static_cast<int>( splitmix64( state ) % ( 2u * num_vars ) );
    std::vector<std::vector<int>> clauses;
    for ( int c = 0; c < num_clauses; ++c )
    {
      std::vector<int> clause;
      for ( int k = 0; k < 3; ++k )
      {
        int const var = 1 + static_cast<int>( splitmix64( state ) % num_vars );
        int const lit = ( splitmix64( state ) & 1u ) ? var : -var;
        clause.push_back( lit );
      }
      clauses.push_back( clause );
    }

    sat_solver solver;
    solver.ensure_variables( num_vars );
    for ( auto const& clause : clauses )
    {
      solver.add_clause( clause );
    }
    auto const result = solver.solve();
    bool const expected = brute_force_satisfiable( num_vars, clauses );
    if ( expected )
    {
      REQUIRE( result == sat_result::satisfiable );
      REQUIRE( model_satisfies( solver, clauses ) );
      ++sat_seen;
    }
    else
    {
      REQUIRE( result == sat_result::unsatisfiable );
      ++unsat_seen;
    }
  }
  /* the clause density straddles the phase transition, so both happen */
  CHECK( sat_seen > 10 );
  CHECK( unsat_seen > 10 );
}

TEST_CASE( "deterministic across repeated runs" )
{
  auto const run = []() {
    sat_solver solver;
    int p[5][4];
    for ( auto& row : p )
    {
      for ( auto& cell : row )
      {
        cell = solver.add_variable();
      }
    }
    for ( int i = 0; i < 5; ++i )
    {
      solver.add_clause( {p[i][0], p[i][1], p[i][2], p[i][3]} );
    }
    for ( int j = 0; j < 4; ++j )
    {
      for ( int i1 = 0; i1 < 5; ++i1 )
      {
        for ( int i2 = i1 + 1; i2 < 5; ++i2 )
        {
          solver.add_clause( {-p[i1][j], -p[i2][j]} );
        }
      }
    }
    auto const result = solver.solve();
    return std::make_pair( result, solver.conflicts() );
  };
  auto const first = run();
  auto const second = run();
  CHECK( first.first == sat_result::unsatisfiable );
  CHECK( first.first == second.first );
  CHECK( first.second == second.second );
}
