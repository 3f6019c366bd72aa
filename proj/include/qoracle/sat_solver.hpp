/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file sat_solver.hpp
  \brief A small conflict-driven SAT solver

  Two watched literals, first-UIP learning, VSIDS branching with phase
  saving, and Luby restarts.  Learned clauses are never deleted; the
  intended instances are bounded by a conflict limit anyway.  The solver is
  single-shot and fully deterministic: ties in branching fall back to the
  smallest variable index.

  Literals at the interface follow the DIMACS convention: non-zero integers,
  negative for complemented variables.
*/

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace qoracle
{

enum class sat_result
{
  satisfiable,
  unsatisfiable,
  limit_reached
};

class sat_solver
{
public:
  /*! \brief Returns a fresh variable as a positive DIMACS literal. */
  int add_variable()
  {
    int const v = num_vars_++;
    activity_.push_back( 0.0 );
    polarity_.push_back( false );
    assigns_.push_back( unassigned );
    reason_.push_back( no_clause );
    level_.push_back( 0 );
    seen_.push_back( 0u );
    heap_index_.push_back( -1 );
    watches_.resize( 2u * num_vars_ );
    heap_insert( v );
    return v + 1;
  }

  void ensure_variables( int count )
  {
    while ( num_vars_ < count )
    {
      add_variable();
    }
  }

  /*! \brief Adds a clause of DIMACS literals; the empty clause is allowed. */
  void add_clause( std::vector<int> const& dimacs )
  {
    assert( !solved_ );
    if ( contradiction_ )
    {
      return;
    }
    clause_buffer_.clear();
    for ( int ext : dimacs )
    {
      assert( ext != 0 && std::abs( ext ) <= num_vars_ );
      int const lit = external_to_lit( ext );
      if ( value( lit ) == l_true && level_[var_of( lit )] == 0 )
      {
        return;
      }
      if ( value( lit ) == l_false && level_[var_of( lit )] == 0 )
      {
        continue;
      }
      bool duplicate = false;
      for ( int other : clause_buffer_ )
      {
        if ( other == lit )
        {
          duplicate = true;
          break;
        }
        if ( other == ( lit ^ 1 ) )
        {
          return;
        }
      }
      if ( !duplicate )
      {
        clause_buffer_.push_back( lit );
      }
    }
    if ( clause_buffer_.empty() )
    {
      contradiction_ = true;
      return;
    }
    if ( clause_buffer_.size() == 1u )
    {
      if ( !enqueue( clause_buffer_[0], no_clause ) )
      {
        contradiction_ = true;
      }
      else if ( propagate() != no_clause )
      {
        contradiction_ = true;
      }
      return;
    }
    attach_clause( store_clause( clause_buffer_ ) );
  }

  /*! \brief Solves once; stops early after `conflict_limit` conflicts. */
  sat_result solve( uint64_t conflict_limit = UINT64_MAX )
  {
    assert( !solved_ );
    solved_ = true;
    if ( contradiction_ )
    {
      return sat_result::unsatisfiable;
    }
    if ( propagate() != no_clause )
    {
      return sat_result::unsatisfiable;
    }

    uint64_t restart_count = 0u;
    uint64_t next_restart = luby( ++restart_count ) * restart_base;
    std::vector<int> learnt;

    while ( true )
    {
      uint32_t const conflict = propagate();
      if ( conflict != no_clause )
      {
        ++conflicts_;
        if ( decision_level() == 0 )
        {
          return sat_result::unsatisfiable;
        }
        int backjump;
        analyze( conflict, learnt, backjump );
        cancel_until( backjump );
        if ( learnt.size() == 1u )
        {
          enqueue( learnt[0], no_clause );
        }
        else
        {
          uint32_t const cref = store_clause( learnt );
          attach_clause( cref );
          enqueue( learnt[0], cref );
        }
        var_inc_ *= 1.0 / var_decay;
        if ( conflicts_ >= conflict_limit )
        {
          return sat_result::limit_reached;
        }
        if ( conflicts_ >= next_restart )
        {
          next_restart = conflicts_ + luby( ++restart_count ) * restart_base;
          cancel_until( 0 );
        }
        continue;
      }

      int const decision = pick_branch();
      if ( decision == -1 )
      {
        model_.assign( assigns_.begin(), assigns_.end() );
        return sat_result::satisfiable;
      }
      trail_lim_.push_back( static_cast<int>( trail_.size() ) );
      enqueue( decision, no_clause );
    }
  }

  /*! \brief Value of a variable in the model, by positive DIMACS literal. */
  bool model_value( int variable ) const
  {
    assert( variable >= 1 && variable <= num_vars_ );
    return model_[variable - 1] == l_true;
  }

  uint64_t conflicts() const { return conflicts_; }
  int num_variables() const { return num_vars_; }

private:
  static constexpr int8_t l_true = 1;
  static constexpr int8_t l_false = 0;
  static constexpr int8_t unassigned = -1;
  static constexpr uint32_t no_clause = 0xffffffffu;
  static constexpr double var_decay = 0.95;
  static constexpr uint64_t restart_base = 100u;

  struct watcher
  {
    uint32_t cref;
    int blocker;
  };

  static int var_of( int lit ) { return lit >> 1; }
  static int external_to_lit( int ext )
  {
    return ext > 0 ? 2 * ( ext - 1 ) : 2 * ( -ext - 1 ) + 1;
  }

  int8_t value( int lit ) const
  {
    int8_t const a = assigns_[var_of( lit )];
    return a == unassigned ? unassigned : static_cast<int8_t>( a ^ ( lit & 1 ) );
  }

  int decision_level() const { return static_cast<int>( trail_lim_.size() ); }

  uint32_t store_clause( std::vector<int> const& lits )
  {
    uint32_t const cref = static_cast<uint32_t>( arena_.size() );
    arena_.push_back( static_cast<int>( lits.size() ) );
    arena_.insert( arena_.end(), lits.begin(), lits.end() );
    return cref;
  }

  void attach_clause( uint32_t cref )
  {
    int const* lits = &arena_[cref + 1u];
    watches_[lits[0] ^ 1].push_back( {cref, lits[1]} );
    watches_[lits[1] ^ 1].push_back( {cref, lits[0]} );
  }

  bool enqueue( int lit, uint32_t from )
  {
    if ( value( lit ) != unassigned )
    {
      return value( lit ) == l_true;
    }
    int const v = var_of( lit );
    assigns_[v] = static_cast<int8_t>( 1 ^ ( lit & 1 ) );
    level_[v] = decision_level();
    reason_[v] = from;
    polarity_[v] = ( lit & 1 ) == 0;
    trail_.push_back( lit );
    return true;
  }

  uint32_t propagate()
  {
    while ( qhead_ < trail_.size() )
    {
      int const p = trail_[qhead_++];
      auto& ws = watches_[p];
      size_t keep = 0u;
      for ( size_t read = 0u; read < ws.size(); ++read )
      {
        watcher const w = ws[read];
        if ( value( w.blocker ) == l_true )
        {
          ws[keep++] = w;
          continue;
        }
        int* lits = &arena_[w.cref + 1u];
        int const size = arena_[w.cref];
        int const false_lit = p ^ 1;
        if ( lits[0] == false_lit )
        {
          lits[0] = lits[1];
          lits[1] = false_lit;
        }
        if ( value( lits[0] ) == l_true )
        {
          ws[keep++] = {w.cref, lits[0]};
          continue;
        }
        bool moved = false;
        for ( int i = 2; i < size; ++i )
        {
          if ( value( lits[i] ) != l_false )
          {
            lits[1] = lits[i];
            lits[i] = false_lit;
            watches_[lits[1] ^ 1].push_back( {w.cref, lits[0]} );
            moved = true;
            break;
          }
        }
        if ( moved )
        {
          continue;
        }
        ws[keep++] = {w.cref, lits[0]};
        if ( value( lits[0] ) == l_false )
        {
          /* conflict: flush the remaining watchers and report */
          for ( size_t rest = read + 1u; rest < ws.size(); ++rest )
          {
            ws[keep++] = ws[rest];
          }
          ws.resize( keep );
          qhead_ = trail_.size();
          return w.cref;
        }
        enqueue( lits[0], w.cref );
      }
      ws.resize( keep );
    }
    return no_clause;
  }

  void analyze( uint32_t conflict, std::vector<int>& learnt, int& backjump )
  {
    learnt.clear();
    learnt.push_back( 0 );
    int path_count = 0;
    int p = -1;
    size_t index = trail_.size();

    uint32_t cref = conflict;
    do
    {
      assert( cref != no_clause );
      int const size = arena_[cref];
      int const* lits = &arena_[cref + 1u];
      for ( int i = ( p == -1 ? 0 : 1 ); i < size; ++i )
      {
        int const q = lits[i];
        int const v = var_of( q );
        if ( !seen_[v] && level_[v] > 0 )
        {
          seen_[v] = 1u;
          bump_activity( v );
          if ( level_[v] >= decision_level() )
          {
            ++path_count;
          }
          else
          {
            learnt.push_back( q );
          }
        }
      }
      while ( !seen_[var_of( trail_[--index] )] )
      {
      }
      p = trail_[index];
      seen_[var_of( p )] = 0u;
      cref = reason_[var_of( p )];
      --path_count;
    } while ( path_count > 0 );
    learnt[0] = p ^ 1;

    if ( learnt.size() == 1u )
    {
      backjump = 0;
    }
    else
    {
      size_t max_index = 1u;
      for ( size_t i = 2u; i < learnt.size(); ++i )
      {
        if ( level_[var_of( learnt[i] )] > level_[var_of( learnt[max_index] )] )
        {
          max_index = i;
        }
      }
      std::swap( learnt[1], learnt[max_index] );
      backjump = level_[var_of( learnt[1] )];
    }
    for ( size_t i = 1u; i < learnt.size(); ++i )
    {
      seen_[var_of( learnt[i] )] = 0u;
    }
  }

  void cancel_until( int target_level )
  {
    if ( decision_level() <= target_level )
    {
      return;
    }
    int const bound = trail_lim_[target_level];
    for ( int i = static_cast<int>( trail_.size() ) - 1; i >= bound; --i )
    {
      int const v = var_of( trail_[i] );
      assigns_[v] = unassigned;
      reason_[v] = no_clause;
      if ( heap_index_[v] == -1 )
      {
        heap_insert( v );
      }
    }
    trail_.resize( bound );
    trail_lim_.resize( target_level );
    qhead_ = trail_.size();
  }

  int pick_branch()
  {
    while ( !heap_.empty() )
    {
      int const v = heap_[0];
      heap_remove_top();
      if ( assigns_[v] == unassigned )
      {
        return 2 * v + ( polarity_[v] ? 0 : 1 );
      }
    }
    return -1;
  }

  void bump_activity( int v )
  {
    activity_[v] += var_inc_;
    if ( activity_[v] > 1e100 )
    {
      /* uniform rescaling preserves the heap order */
      for ( auto& a : activity_ )
      {
        a *= 1e-100;
      }
      var_inc_ *= 1e-100;
    }
    if ( heap_index_[v] != -1 )
    {
      heap_sift_up( heap_index_[v] );
    }
  }

  static uint64_t luby( uint64_t i )
  {
    while ( true )
    {
      uint64_t k = 1u;
      while ( ( ( uint64_t( 1 ) << k ) - 1u ) < i )
      {
        ++k;
      }
      if ( i == ( uint64_t( 1 ) << k ) - 1u )
      {
        return uint64_t( 1 ) << ( k - 1u );
      }
      i = i - ( uint64_t( 1 ) << ( k - 1u ) ) + 1u;
    }
  }

  /* indexed binary max-heap on (activity, smaller index first) */
  bool heap_before( int a, int b ) const
  {
    return activity_[a] > activity_[b] ||
           ( activity_[a] == activity_[b] && a < b );
  }

  void heap_insert( int v )
  {
    heap_index_[v] = static_cast<int>( heap_.size() );
    heap_.push_back( v );
    heap_sift_up( heap_index_[v] );
  }

  void heap_remove_top()
  {
    int const v = heap_[0];
    heap_index_[v] = -1;
    if ( heap_.size() == 1u )
    {
      heap_.pop_back();
      return;
    }
    heap_[0] = heap_.back();
    heap_.pop_back();
    heap_index_[heap_[0]] = 0;
    heap_sift_down( 0 );
  }

  void heap_sift_up( int pos )
  {
    int const v = heap_[pos];
    while ( pos > 0 )
    {
      int const parent = ( pos - 1 ) / 2;
      if ( !heap_before( v, heap_[parent] ) )
      {
        break;
      }
      heap_[pos] = heap_[parent];
      heap_index_[heap_[pos]] = pos;
      pos = parent;
    }
    heap_[pos] = v;
    heap_index_[v] = pos;
  }

  void heap_sift_down( int pos )
  {
    int const v = heap_[pos];
    int const size = static_cast<int>( heap_.size() );
    while ( 2 * pos + 1 < size )
    {
      int child = 2 * pos + 1;
      if ( child + 1 < size && heap_before( heap_[child + 1], heap_[child] ) )
      {
        ++child;
      }
      if ( !heap_before( heap_[child], v ) )
      {
        break;
      }
      heap_[pos] = heap_[child];
      heap_index_[heap_[pos]] = pos;
      pos = child;
    }
    heap_[pos] = v;
    heap_index_[v] = pos;
  }

  int num_vars_{0};
  bool contradiction_{false};
  bool solved_{false};
  uint64_t conflicts_{0u};
  double var_inc_{1.0};

  std::vector<int> arena_;
  std::vector<std::vector<watcher>> watches_;
  std::vector<double> activity_;
  std::vector<bool> polarity_;
  std::vector<int8_t> assigns_;
  std::vector<int8_t> model_;
  std::vector<uint32_t> reason_;
  std::vector<int> level_;
  std::vector<uint8_t> seen_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_{0u};
  std::vector<int> heap_;
  std::vector<int> heap_index_;
  std::vector<int> clause_buffer_;
};

} // namespace qoracle
