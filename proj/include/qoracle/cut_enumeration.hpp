/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file cut_enumeration.hpp
  \brief Priority-cut enumeration over XAGs

  Every node keeps at most `cut_limit` non-trivial cuts, ordered by cost,
  plus the trivial cut used for merging at fanouts.  Xor gates additionally
  receive a cut for their maximal single-fanout xor tree; such xor-block
  cuts have cost zero and are not bounded by the cut size.
*/

#pragma once

#include "spectrum.hpp"
#include "truth_table.hpp"
#include "xag.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace qoracle
{

struct mapper_params
{
  /*! \brief Maximum number of leaves of a generic cut. */
  uint32_t cut_size{4u};

  /*! \brief Number of priority cuts stored per node. */
  uint32_t cut_limit{8u};

  enum class cost_mode
  {
    spectral,
    baseline_area
  };

  /*! \brief Cut cost: nonzero spectral coefficients, or area flow. */
  cost_mode mode{cost_mode::spectral};

  /*! \brief Map single-fanout xor trees into zero-cost blocks. */
  bool use_xor_blocks{true};
};

struct cut
{
  /*! \brief Leaf node indices, strictly increasing. */
  std::vector<uint32_t> leaves;

  /*! \brief Function over the leaves; empty for wide xor blocks. */
  truth_table function;

  /*! \brief Spectral cost of the function; zero for xor blocks. */
  uint32_t cost{0u};

  /*! \brief Area flow in 1/256 units; the baseline-mode cost. */
  uint64_t flow{0u};

  bool is_xor_block{false};
  bool block_complement{false};
  bool has_function{true};

  bool trivial_for( uint32_t node ) const
  {
    return leaves.size() == 1u && leaves[0] == node && !is_xor_block;
  }
};

namespace detail
{

inline bool cut_before( cut const& a, cut const& b, mapper_params::cost_mode mode )
{
  if ( mode == mapper_params::cost_mode::baseline_area )
  {
    if ( a.flow != b.flow )
    {
      return a.flow < b.flow;
    }
  }
  else if ( a.cost != b.cost )
  {
    return a.cost < b.cost;
  }
  if ( a.leaves.size() != b.leaves.size() )
  {
    return a.leaves.size() < b.leaves.size();
  }
  return a.leaves < b.leaves;
}

/*! \brief True if `a` is a subset of `b`; both sorted. */
inline bool leaves_subset( std::vector<uint32_t> const& a, std::vector<uint32_t> const& b )
{
  return std::includes( b.begin(), b.end(), a.begin(), a.end() );
}

inline bool dominates( cut const& a, cut const& b, mapper_params::cost_mode mode )
{
  if ( a.leaves.size() > b.leaves.size() || !leaves_subset( a.leaves, b.leaves ) )
  {
    return false;
  }
  return mode == mapper_params::cost_mode::baseline_area ? a.flow <= b.flow
                                                         : a.cost <= b.cost;
}

} // namespace detail

/*! \brief Priority list of one node: non-trivial cuts plus the trivial cut. */
class cut_set
{
public:
  void set_trivial( cut trivial ) { trivial_ = std::move( trivial ); }

  /*! \brief Inserts with dominance filtering and capacity `limit`. */
  void insert( cut&& candidate, uint32_t limit, mapper_params::cost_mode mode )
  {
    for ( auto const& existing : cuts_ )
    {
      if ( detail::dominates( existing, candidate, mode ) )
      {
        return;
      }
    }
    cuts_.erase( std::remove_if( cuts_.begin(), cuts_.end(),
                                 [&]( cut const& existing ) {
                                   return detail::dominates( candidate, existing, mode );
                                 } ),
                 cuts_.end() );
    auto const position =
        std::lower_bound( cuts_.begin(), cuts_.end(), candidate,
                          [mode]( cut const& a, cut const& b ) {
                            return detail::cut_before( a, b, mode );
                          } );
    cuts_.insert( position, std::move( candidate ) );
    if ( cuts_.size() > limit )
    {
      cuts_.resize( limit );
    }
  }

  /*! \brief Best non-trivial cut; the list is never empty for gates. */
  cut const& best() const { return cuts_.front(); }

  std::vector<cut> const& nontrivial() const { return cuts_; }
  cut const& trivial() const { return trivial_; }
  bool has_nontrivial() const { return !cuts_.empty(); }

  /*! \brief Iterates non-trivial cuts followed by the trivial cut. */
  template<class Fn>
  void foreach_cut( Fn&& fn ) const
  {
    for ( auto const& c : cuts_ )
    {
      fn( c );
    }
    fn( trivial_ );
  }

private:
  std::vector<cut> cuts_;
  cut trivial_;
};

/*! \brief Leaves of the maximal single-fanout xor tree rooted at `root`.
 *
 * Repeated leaves cancel pairwise; complemented edges fold into the
 * returned polarity.  The constant node never appears as a leaf.
 */
inline std::pair<std::vector<uint32_t>, bool>
xor_block_leaves( xag_network const& xag, std::vector<uint32_t> const& fanout,
                  uint32_t root )
{
  assert( xag.is_xor( root ) );
  bool complement = false;
  std::map<uint32_t, uint32_t> leaf_count;
  std::vector<uint32_t> stack{root};
  while ( !stack.empty() )
  {
    uint32_t const m = stack.back();
    stack.pop_back();
    for ( uint32_t fanin : {xag.get_node( m ).fanin0, xag.get_node( m ).fanin1} )
    {
      complement ^= xag_network::literal_complemented( fanin );
      uint32_t const child = xag_network::literal_node( fanin );
      if ( xag.is_xor( child ) && fanout[child] == 1u )
      {
        stack.push_back( child );
      }
      else if ( !xag.is_constant( child ) )
      {
        ++leaf_count[child];
      }
    }
  }
  std::vector<uint32_t> leaves;
  for ( auto const& [leaf, count] : leaf_count )
  {
    if ( count & 1u )
    {
      leaves.push_back( leaf );
    }
  }
  return {leaves, complement};
}

/*! \brief All priority cut sets of `xag`, indexed by node. */
class cut_enumeration
{
public:
  cut_enumeration( xag_network const& xag, mapper_params const& params )
      : xag_( xag ), params_( params ), fanout_( xag.fanout_counts() )
  {
    run();
  }

  cut_set const& cuts( uint32_t node ) const { return sets_[node]; }

  /*! \brief Best area flow per node, in 1/256 units. */
  uint64_t best_flow( uint32_t node ) const { return best_flow_[node]; }

private:
  void run()
  {
    sets_.resize( xag_.size() );
    best_flow_.assign( xag_.size(), 0u );
    for ( uint32_t n = 0u; n < xag_.size(); ++n )
    {
      if ( xag_.is_constant( n ) )
      {
        continue;
      }
      sets_[n].set_trivial( make_trivial( n ) );
      if ( !xag_.is_gate( n ) )
      {
        continue;
      }
      merge_fanin_cuts( n );
      if ( params_.use_xor_blocks && xag_.is_xor( n ) )
      {
        insert_xor_block( n );
      }
      best_flow_[n] = sets_[n].has_nontrivial() ? sets_[n].best().flow : 0u;
    }
  }

  cut make_trivial( uint32_t n ) const
  {
    cut c;
    c.leaves = {n};
    c.function = truth_table::nth_var( 1u, 0u );
    c.cost = 1u;
    c.flow = 0u;
    return c;
  }

  void merge_fanin_cuts( uint32_t n )
  {
    auto const& node = xag_.get_node( n );
    auto const& set_a = sets_[xag_network::literal_node( node.fanin0 )];
    auto const& set_b = sets_[xag_network::literal_node( node.fanin1 )];
    set_a.foreach_cut( [&]( cut const& ca ) {
      set_b.foreach_cut( [&]( cut const& cb ) {
        if ( !ca.has_function || !cb.has_function )
        {
          return;
        }
        merge_pair( n, ca, cb );
      } );
    } );
  }

  void merge_pair( uint32_t n, cut const& ca, cut const& cb )
  {
    cut merged;
    merged.leaves.reserve( ca.leaves.size() + cb.leaves.size() );
    std::set_union( ca.leaves.begin(), ca.leaves.end(), cb.leaves.begin(),
                    cb.leaves.end(), std::back_inserter( merged.leaves ) );
    if ( merged.leaves.size() > params_.cut_size )
    {
      return;
    }

    auto const& node = xag_.get_node( n );
    uint32_t const width = static_cast<uint32_t>( merged.leaves.size() );
    auto fa = lift( ca, merged.leaves, width );
    if ( xag_network::literal_complemented( node.fanin0 ) )
    {
      fa = ~fa;
    }
    auto fb = lift( cb, merged.leaves, width );
    if ( xag_network::literal_complemented( node.fanin1 ) )
    {
      fb = ~fb;
    }
    merged.function = xag_.is_and( n ) ? ( fa & fb ) : ( fa ^ fb );
    merged.cost = spectral_cost( merged.function );
    merged.flow = uint64_t( 256u );
    for ( auto leaf : merged.leaves )
    {
      merged.flow += best_flow_[leaf] / std::max<uint32_t>( fanout_[leaf], 1u );
    }
    sets_[n].insert( std::move( merged ), params_.cut_limit, params_.mode );
  }

  truth_table lift( cut const& c, std::vector<uint32_t> const& union_leaves,
                    uint32_t width ) const
  {
    std::vector<uint32_t> positions( c.leaves.size() );
    for ( uint32_t i = 0u; i < c.leaves.size(); ++i )
    {
      positions[i] = static_cast<uint32_t>(
          std::lower_bound( union_leaves.begin(), union_leaves.end(), c.leaves[i] ) -
          union_leaves.begin() );
    }
    return c.function.expanded( positions, width );
  }

  void insert_xor_block( uint32_t n )
  {
    auto [leaves, complement] = xor_block_leaves( xag_, fanout_, n );
    if ( leaves.empty() )
    {
      return;
    }
    cut block;
    block.leaves = std::move( leaves );
    block.is_xor_block = true;
    block.block_complement = complement;
    block.cost = 0u;
    block.flow = 0u;
    if ( block.leaves.size() <= std::min<uint32_t>( params_.cut_size, truth_table::max_num_vars ) )
    {
      uint32_t const width = static_cast<uint32_t>( block.leaves.size() );
      auto parity = truth_table( width );
      for ( uint32_t v = 0u; v < width; ++v )
      {
        parity = parity ^ truth_table::nth_var( width, v );
      }
      block.function = complement ? ~parity : parity;
    }
    else
    {
      block.has_function = false;
    }
    sets_[n].insert( std::move( block ), params_.cut_limit, params_.mode );
  }

  xag_network const& xag_;
  mapper_params const& params_;
  std::vector<uint32_t> fanout_;
  std::vector<cut_set> sets_;
  std::vector<uint64_t> best_flow_;
};

} // namespace qoracle
