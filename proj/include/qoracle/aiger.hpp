/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file aiger.hpp
  \brief Reading and writing combinational ASCII AIGER (aag) files

  Only combinational networks are supported; a non-zero latch count is
  rejected.  On writing, exclusive-or gates are expanded into the usual
  three-conjunction pattern, so written files are plain AIGs.
*/

#pragma once

#include "xag.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoracle
{

class aiger_error : public std::runtime_error
{
public:
  aiger_error( uint32_t line, std::string const& what )
      : std::runtime_error( "aiger line " + std::to_string( line ) + ": " + what ),
        line_( line )
  {
  }

  uint32_t line() const { return line_; }

private:
  uint32_t line_;
};

namespace detail
{

struct aiger_parser
{
  std::istream& in;
  uint32_t line_number{0u};
  std::string line;

  bool next_line()
  {
    if ( !std::getline( in, line ) )
    {
      return false;
    }
    ++line_number;
    return true;
  }

  std::vector<uint64_t> parse_numbers( uint32_t expected )
  {
    std::istringstream ss( line );
    std::vector<uint64_t> numbers;
    uint64_t value;
    while ( ss >> value )
    {
      numbers.push_back( value );
    }
    std::string trailing;
    if ( ss.clear(), ss >> trailing )
    {
      throw aiger_error( line_number, "unexpected token '" + trailing + "'" );
    }
    if ( numbers.size() != expected )
    {
      throw aiger_error( line_number, "expected " + std::to_string( expected ) +
                                          " numbers, got " + std::to_string( numbers.size() ) );
    }
    return numbers;
  }
};

} // namespace detail

/*! \brief Parses an ASCII AIGER stream into an AND-only network. */
inline xag_network read_aiger( std::istream& in )
{
  detail::aiger_parser parser{in};
  if ( !parser.next_line() )
  {
    throw aiger_error( 1u, "empty file" );
  }
  std::istringstream header( parser.line );
  std::string magic;
  uint64_t m, i, l, o, a;
  if ( !( header >> magic >> m >> i >> l >> o >> a ) || magic != "aag" )
  {
    throw aiger_error( parser.line_number, "malformed header, expected 'aag M I L O A'" );
  }
  if ( l != 0u )
  {
    throw aiger_error( parser.line_number, "latches are not supported" );
  }
  if ( m < i + a )
  {
    throw aiger_error( parser.line_number, "maximum variable index smaller than I + A" );
  }

  std::vector<uint64_t> input_literals( i );
  for ( uint64_t k = 0u; k < i; ++k )
  {
    if ( !parser.next_line() )
    {
      throw aiger_error( parser.line_number + 1u, "unexpected end of file in inputs" );
    }
    auto const numbers = parser.parse_numbers( 1u );
    if ( numbers[0] == 0u || numbers[0] & 1u )
    {
      throw aiger_error( parser.line_number, "input literal must be even and non-zero" );
    }
    input_literals[k] = numbers[0];
  }

  std::vector<uint64_t> output_literals( o );
  for ( uint64_t k = 0u; k < o; ++k )
  {
    if ( !parser.next_line() )
    {
      throw aiger_error( parser.line_number + 1u, "unexpected end of file in outputs" );
    }
    output_literals[k] = parser.parse_numbers( 1u )[0];
  }

  struct and_line
  {
    uint64_t lhs, rhs0, rhs1;
    uint32_t line;
  };
  std::vector<and_line> ands( a );
  for ( uint64_t k = 0u; k < a; ++k )
  {
    if ( !parser.next_line() )
    {
      throw aiger_error( parser.line_number + 1u, "unexpected end of file in and gates" );
    }
    auto const numbers = parser.parse_numbers( 3u );
    if ( numbers[0] & 1u )
    {
      throw aiger_error( parser.line_number, "and gate defines a complemented literal" );
    }
    ands[k] = {numbers[0], numbers[1], numbers[2], parser.line_number};
  }

  /* map aiger variables to definitions */
  std::vector<int64_t> definition( m + 1u, -1 );
  definition[0] = 0;
  for ( uint64_t k = 0u; k < i; ++k )
  {
    uint64_t const var = input_literals[k] >> 1u;
    if ( var > m || definition[var] != -1 )
    {
      throw aiger_error( parser.line_number, "input literal " + std::to_string( input_literals[k] ) + " redefined or out of range" );
    }
    definition[var] = 1;
  }
  std::vector<int64_t> and_index( m + 1u, -1 );
  for ( uint64_t k = 0u; k < a; ++k )
  {
    uint64_t const var = ands[k].lhs >> 1u;
    if ( var > m || definition[var] != -1 )
    {
      throw aiger_error( ands[k].line, "and literal " + std::to_string( ands[k].lhs ) + " redefined or out of range" );
    }
    definition[var] = 2;
    and_index[var] = static_cast<int64_t>( k );
  }

  xag_network xag;
  std::vector<uint32_t> literal_map( 2u * ( m + 1u ), 0u );
  literal_map[1] = 1u;
  for ( uint64_t k = 0u; k < i; ++k )
  {
    uint32_t const lit = xag.create_input();
    literal_map[input_literals[k]] = lit;
    literal_map[input_literals[k] ^ 1u] = lit ^ 1u;
  }

  /* ands may appear in any order in ASCII files; resolve dependencies */
  std::vector<uint8_t> state( m + 1u, 0u );
  std::vector<uint64_t> stack;
  auto const define_var = [&]( uint64_t var ) {
    if ( state[var] == 2u )
    {
      return;
    }
    stack.assign( 1u, var );
    while ( !stack.empty() )
    {
      uint64_t const v = stack.back();
      if ( definition[v] == -1 )
      {
        throw aiger_error( parser.line_number, "literal " + std::to_string( 2u * v ) + " is never defined" );
      }
      if ( definition[v] != 2 || state[v] == 2u )
      {
        stack.pop_back();
        continue;
      }
      auto const& gate = ands[and_index[v]];
      uint64_t const dep0 = gate.rhs0 >> 1u;
      uint64_t const dep1 = gate.rhs1 >> 1u;
      if ( dep0 > m || dep1 > m )
      {
        throw aiger_error( gate.line, "fanin literal out of range" );
      }
      if ( state[v] == 1u )
      {
        uint32_t const lit = xag.add_gate( xag_network::node_kind::and_gate,
                                           literal_map[gate.rhs0], literal_map[gate.rhs1] );
        literal_map[gate.lhs] = lit;
        literal_map[gate.lhs ^ 1u] = lit ^ 1u;
        state[v] = 2u;
        stack.pop_back();
        continue;
      }
      state[v] = 1u;
      for ( uint64_t dep : {dep0, dep1} )
      {
        if ( definition[dep] == 2 && state[dep] != 2u )
        {
          if ( state[dep] == 1u )
          {
            throw aiger_error( gate.line, "combinational cycle through literal " + std::to_string( 2u * dep ) );
          }
          stack.push_back( dep );
        }
        else if ( definition[dep] == -1 )
        {
          throw aiger_error( gate.line, "literal " + std::to_string( 2u * dep ) + " is never defined" );
        }
      }
    }
  };
  for ( uint64_t k = 0u; k < a; ++k )
  {
    define_var( ands[k].lhs >> 1u );
  }

  std::vector<std::string> output_names( o );
  while ( parser.next_line() )
  {
    if ( parser.line.empty() )
    {
      continue;
    }
    if ( parser.line[0] == 'c' )
    {
      break;
    }
    std::istringstream ss( parser.line );
    std::string symbol;
    ss >> symbol;
    std::string name;
    std::getline( ss, name );
    if ( !name.empty() && name[0] == ' ' )
    {
      name.erase( 0u, 1u );
    }
    if ( symbol.size() < 2u || ( symbol[0] != 'i' && symbol[0] != 'o' ) )
    {
      throw aiger_error( parser.line_number, "unsupported symbol table entry '" + symbol + "'" );
    }
    uint64_t index;
    try
    {
      index = std::stoull( symbol.substr( 1u ) );
    }
    catch ( ... )
    {
      throw aiger_error( parser.line_number, "malformed symbol table entry '" + symbol + "'" );
    }
    if ( symbol[0] == 'o' && index < o )
    {
      output_names[index] = name;
    }
    else if ( symbol[0] == 'i' && index < i )
    {
      xag.set_input_name( static_cast<uint32_t>( index ), name );
    }
  }

  for ( uint64_t k = 0u; k < o; ++k )
  {
    uint64_t const lit = output_literals[k];
    if ( ( lit >> 1u ) > m || definition[lit >> 1u] == -1 )
    {
      throw aiger_error( parser.line_number, "output literal " + std::to_string( lit ) + " is never defined" );
    }
    xag.create_output( literal_map[lit], output_names[k] );
  }
  return xag;
}

inline xag_network read_aiger_string( std::string const& text )
{
  std::istringstream in( text );
  return read_aiger( in );
}

/*! \brief Writes an ASCII AIGER file, expanding xor gates into three ands. */
inline void write_aiger( xag_network const& xag, std::ostream& out )
{
  /* first pass: assign aiger variables; xors expand to three ands */
  uint32_t next_var = xag.num_inputs();
  std::vector<uint32_t> literal_of( xag.size(), 0u );
  literal_of[0] = 0u;
  for ( uint32_t k = 0u; k < xag.num_inputs(); ++k )
  {
    literal_of[xag.inputs()[k]] = 2u * ( k + 1u );
  }

  struct and_entry
  {
    uint32_t lhs, rhs0, rhs1;
  };
  std::vector<and_entry> ands;
  auto const mapped = [&]( uint32_t literal ) {
    return literal_of[xag_network::literal_node( literal )] ^
           ( xag_network::literal_complemented( literal ) ? 1u : 0u );
  };
  auto const new_and = [&]( uint32_t rhs0, uint32_t rhs1 ) {
    uint32_t const lhs = 2u * ++next_var;
    ands.push_back( {lhs, rhs0, rhs1} );
    return lhs;
  };

  for ( uint32_t n = 0u; n < xag.size(); ++n )
  {
    if ( xag.is_and( n ) )
    {
      literal_of[n] = new_and( mapped( xag.get_node( n ).fanin0 ),
                               mapped( xag.get_node( n ).fanin1 ) );
    }
    else if ( xag.is_xor( n ) )
    {
      uint32_t const a = mapped( xag.get_node( n ).fanin0 );
      uint32_t const b = mapped( xag.get_node( n ).fanin1 );
      uint32_t const u = new_and( a, b ^ 1u );
      uint32_t const v = new_and( a ^ 1u, b );
      literal_of[n] = new_and( u ^ 1u, v ^ 1u ) ^ 1u;
    }
  }

  out << "aag " << next_var << ' ' << xag.num_inputs() << " 0 "
      << xag.num_outputs() << ' ' << ands.size() << '\n';
  for ( uint32_t k = 0u; k < xag.num_inputs(); ++k )
  {
    out << 2u * ( k + 1u ) << '\n';
  }
  for ( auto output : xag.outputs() )
  {
    out << mapped( output ) << '\n';
  }
  for ( auto const& gate : ands )
  {
    out << gate.lhs << ' ' << gate.rhs0 << ' ' << gate.rhs1 << '\n';
  }
  for ( uint32_t k = 0u; k < xag.num_inputs(); ++k )
  {
    if ( !xag.input_name( k ).empty() )
    {
      out << 'i' << k << ' ' << xag.input_name( k ) << '\n';
    }
  }
  for ( uint32_t k = 0u; k < xag.num_outputs(); ++k )
  {
    if ( !xag.output_name( k ).empty() )
    {
      out << 'o' << k << ' ' << xag.output_name( k ) << '\n';
    }
  }
}

inline std::string write_aiger_string( xag_network const& xag )
{
  std::ostringstream out;
  write_aiger( xag, out );
  return out.str();
}

} // namespace qoracle
