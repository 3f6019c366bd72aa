/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file spectrum.hpp
  \brief Rademacher-Walsh spectra of Boolean functions

  The spectrum of an n-variable function f is S = H 2^n * F, where F is the
  {1,-1} column vector with F_x = (-1)^{f(x)} and H 2^n is the 2^n x 2^n
  Hadamard matrix, i.e. S_j = sum_x (-1)^{popcount(j & x)} F_x.  Row and
  coefficient indices follow the truth table convention: the first variable
  is the most significant bit.
*/

#pragma once

#include "truth_table.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qoracle
{

struct spectrum
{
  uint32_t num_vars{0u};
  std::vector<int32_t> coefficients;
};

/*! \brief Computes the Rademacher-Walsh spectrum with a fast transform. */
inline spectrum walsh_spectrum( truth_table const& tt )
{
  spectrum s;
  s.num_vars = tt.num_vars();
  s.coefficients.resize( tt.num_bits() );
  for ( uint64_t row = 0u; row < tt.num_bits(); ++row )
  {
    s.coefficients[row] = tt.get_bit( row ) ? -1 : 1;
  }
  for ( uint64_t len = 1u; len < tt.num_bits(); len <<= 1u )
  {
    for ( uint64_t base = 0u; base < tt.num_bits(); base += len << 1u )
    {
      for ( uint64_t i = base; i < base + len; ++i )
      {
        int32_t const a = s.coefficients[i];
        int32_t const b = s.coefficients[i + len];
        s.coefficients[i] = a + b;
        s.coefficients[i + len] = a - b;
      }
    }
  }
  return s;
}

inline uint32_t nonzero_count( spectrum const& s )
{
  uint32_t count = 0u;
  for ( auto c : s.coefficients )
  {
    if ( c != 0 )
    {
      ++count;
    }
  }
  return count;
}

/*! \brief Number of nonzero spectral coefficients; used as mapping cost. */
inline uint32_t spectral_cost( truth_table const& tt )
{
  return nonzero_count( walsh_spectrum( tt ) );
}

/*! \brief Variable set and polarity of a parity function. */
struct parity_support
{
  std::vector<uint32_t> vars;
  bool complemented{false};
};

/*! \brief Matches f = x_{i1} ^ ... ^ x_{im} ^ c.
 *
 * A function is such a parity function exactly when its spectrum has a
 * single nonzero coefficient, which then equals +-2^n.  Constant functions
 * match with an empty variable set.
 */
inline std::optional<parity_support> match_parity( truth_table const& tt )
{
  auto const s = walsh_spectrum( tt );
  uint64_t support_index = 0u;
  int32_t coefficient = 0;
  for ( uint64_t j = 0u; j < s.coefficients.size(); ++j )
  {
    if ( s.coefficients[j] != 0 )
    {
      if ( coefficient != 0 )
      {
        return std::nullopt;
      }
      support_index = j;
      coefficient = s.coefficients[j];
    }
  }
  if ( coefficient == 0 )
  {
    return std::nullopt;
  }
  parity_support result;
  for ( uint32_t var = 0u; var < tt.num_vars(); ++var )
  {
    if ( ( support_index >> ( tt.num_vars() - 1u - var ) ) & 1u )
    {
      result.vars.push_back( var );
    }
  }
  result.complemented = coefficient < 0;
  return result;
}

} // namespace qoracle
