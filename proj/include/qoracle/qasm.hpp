/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/

/*!
  \file qasm.hpp
  \brief OPENQASM 2.0 writer and reader for {CNOT, H, Rz} circuits

  The writer splits the wires of a circuit into three registers: `x` for
  oracle inputs, `y` for oracle outputs, and `a` for ancillae.  All angles
  are dyadic fractions of pi and are printed exactly.  The reader accepts
  the dialect produced by the writer.
*/

#pragma once

#include "circuit.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoracle
{

class qasm_error : public std::runtime_error
{
public:
  qasm_error( uint32_t line, std::string const& what )
      : std::runtime_error( fmt::format( "qasm line {}: {}", line, what ) ),
        line_number( line )
  {
  }

  uint32_t line_number;
};

/*! \brief Split of a circuit's wires into input, output, and ancilla registers.
 *
 * Wires `[0, num_inputs)` are inputs, the next `num_outputs` wires are
 * outputs, and all remaining wires are ancillae.
 */
struct register_layout
{
  uint32_t num_inputs{0u};
  uint32_t num_outputs{0u};

  bool operator==( register_layout const& other ) const = default;
};

/*! \brief Prints a dyadic multiple of pi, e.g. `-3*pi/4`. */
inline std::string angle_to_qasm( angle const& theta )
{
  if ( theta.is_zero() )
  {
    return "0";
  }
  std::string text;
  if ( theta.numerator == 1 )
  {
    text = "pi";
  }
  else if ( theta.numerator == -1 )
  {
    text = "-pi";
  }
  else
  {
    text = fmt::format( "{}*pi", theta.numerator );
  }
  if ( theta.power > 0u )
  {
    text += fmt::format( "/{}", uint64_t( 1 ) << theta.power );
  }
  return text;
}

namespace detail
{

inline std::string qasm_wire( uint32_t wire, register_layout const& layout )
{
  if ( wire < layout.num_inputs )
  {
    return fmt::format( "x[{}]", wire );
  }
  if ( wire < layout.num_inputs + layout.num_outputs )
  {
    return fmt::format( "y[{}]", wire - layout.num_inputs );
  }
  return fmt::format( "a[{}]", wire - layout.num_inputs - layout.num_outputs );
}

} // namespace detail

/*! \brief Writes a circuit as OPENQASM 2.0. */
inline void write_qasm( circuit const& c, register_layout const& layout,
                        std::ostream& out )
{
  if ( layout.num_inputs + layout.num_outputs > c.num_qubits() )
  {
    throw std::invalid_argument( "write_qasm: layout exceeds circuit width" );
  }
  uint32_t const ancillae =
      c.num_qubits() - layout.num_inputs - layout.num_outputs;

  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  if ( layout.num_inputs > 0u )
  {
    out << fmt::format( "qreg x[{}];\n", layout.num_inputs );
  }
  if ( layout.num_outputs > 0u )
  {
    out << fmt::format( "qreg y[{}];\n", layout.num_outputs );
  }
  if ( ancillae > 0u )
  {
    out << fmt::format( "qreg a[{}];\n", ancillae );
  }

  for ( auto const& g : c.gates() )
  {
    switch ( g.kind )
    {
    case gate::op::cnot:
      out << fmt::format( "cx {},{};\n", detail::qasm_wire( g.control, layout ),
                          detail::qasm_wire( g.target, layout ) );
      break;
    case gate::op::hadamard:
      out << fmt::format( "h {};\n", detail::qasm_wire( g.target, layout ) );
      break;
    case gate::op::rz:
      out << fmt::format( "rz({}) {};\n", angle_to_qasm( g.theta ),
                          detail::qasm_wire( g.target, layout ) );
      break;
    }
  }
}

inline std::string write_qasm_string( circuit const& c,
                                      register_layout const& layout )
{
  std::ostringstream out;
  write_qasm( c, layout, out );
  return out.str();
}

/*! \brief A circuit read back from OPENQASM together with its register split. */
struct qasm_program
{
  circuit parsed{0u};
  register_layout layout;
};

namespace detail
{

/*! \brief Cursor over one `;`-terminated QASM statement. */
struct qasm_cursor
{
  std::string const& text;
  size_t pos{0u};
  uint32_t line;

  void skip_spaces()
  {
    while ( pos < text.size() &&
            std::isspace( static_cast<unsigned char>( text[pos] ) ) )
    {
      ++pos;
    }
  }

  bool try_consume( char c )
  {
    skip_spaces();
    if ( pos < text.size() && text[pos] == c )
    {
      ++pos;
      return true;
    }
    return false;
  }

  void consume( char c )
  {
    if ( !try_consume( c ) )
    {
      throw qasm_error( line, fmt::format( "expected '{}'", c ) );
    }
  }

  std::string identifier()
  {
    skip_spaces();
    size_t const begin = pos;
    while ( pos < text.size() &&
            ( std::isalnum( static_cast<unsigned char>( text[pos] ) ) ||
              text[pos] == '_' || text[pos] == '.' ) )
    {
      ++pos;
    }
    if ( begin == pos )
    {
      throw qasm_error( line, "expected identifier" );
    }
    return text.substr( begin, pos - begin );
  }

  uint64_t number()
  {
    skip_spaces();
    size_t const begin = pos;
    while ( pos < text.size() &&
            std::isdigit( static_cast<unsigned char>( text[pos] ) ) )
    {
      ++pos;
    }
    if ( begin == pos )
    {
      throw qasm_error( line, "expected number" );
    }
    return std::stoull( text.substr( begin, pos - begin ) );
  }

  bool at_end()
  {
    skip_spaces();
    return pos >= text.size();
  }
};

/*! \brief Parses `name[index]` into an absolute wire. */
inline uint32_t parse_operand( qasm_cursor& cursor,
                               std::vector<std::pair<std::string, uint32_t>> const& registers,
                               std::vector<uint32_t> const& offsets )
{
  auto const name = cursor.identifier();
  cursor.consume( '[' );
  auto const index = cursor.number();
  cursor.consume( ']' );
  for ( uint32_t i = 0u; i < registers.size(); ++i )
  {
    if ( registers[i].first == name )
    {
      if ( index >= registers[i].second )
      {
        throw qasm_error( cursor.line,
                          fmt::format( "index {} out of range for register {}",
                                       index, name ) );
      }
      return offsets[i] + static_cast<uint32_t>( index );
    }
  }
  throw qasm_error( cursor.line, fmt::format( "unknown register {}", name ) );
}

/*! \brief Parses `[-][k*]pi[/2^m]` or `0` into a dyadic angle. */
inline angle parse_angle( qasm_cursor& cursor )
{
  cursor.skip_spaces();
  bool negative = false;
  if ( cursor.try_consume( '-' ) )
  {
    negative = true;
  }
  cursor.skip_spaces();
  int64_t numerator = 1;
  if ( cursor.pos < cursor.text.size() &&
       std::isdigit( static_cast<unsigned char>( cursor.text[cursor.pos] ) ) )
  {
    numerator = static_cast<int64_t>( cursor.number() );
    if ( numerator == 0 )
    {
      return angle::dyadic_pi( 0, 0u );
    }
    cursor.consume( '*' );
  }
  auto const unit = cursor.identifier();
  if ( unit != "pi" )
  {
    throw qasm_error( cursor.line, "expected pi" );
  }
  uint32_t power = 0u;
  if ( cursor.try_consume( '/' ) )
  {
    uint64_t const denominator = cursor.number();
    if ( denominator == 0u || ( denominator & ( denominator - 1u ) ) != 0u )
    {
      throw qasm_error( cursor.line, "denominator must be a power of two" );
    }
    while ( ( uint64_t( 1 ) << power ) < denominator )
    {
      ++power;
    }
  }
  return angle::dyadic_pi( negative ? -numerator : numerator, power );
}

} // namespace detail

/*! \brief Reads the OPENQASM dialect produced by `write_qasm`.
 *
 * Registers named `x` and `y` populate the input and output counts of the
 * returned layout; every other register contributes ancillae.  Wires are
 * assigned in declaration order.
 */
inline qasm_program read_qasm( std::istream& in )
{
  std::vector<std::pair<std::string, uint32_t>> registers;
  std::vector<uint32_t> offsets;
  std::vector<gate> gates;
  uint32_t total_wires = 0u;
  bool seen_version = false;

  std::string line;
  uint32_t line_number = 0u;
  while ( std::getline( in, line ) )
  {
    ++line_number;
    if ( auto const comment = line.find( "//" ); comment != std::string::npos )
    {
      line.resize( comment );
    }
    size_t start = 0u;
    while ( start < line.size() )
    {
      auto const stop = line.find( ';', start );
      if ( stop == std::string::npos )
      {
        std::string rest = line.substr( start );
        if ( rest.find_first_not_of( " \t\r" ) != std::string::npos )
        {
          throw qasm_error( line_number, "statement not terminated by ';'" );
        }
        break;
      }
      std::string const statement = line.substr( start, stop - start );
      start = stop + 1u;

      detail::qasm_cursor cursor{statement, 0u, line_number};
      if ( cursor.at_end() )
      {
        continue;
      }
      auto const keyword = cursor.identifier();
      if ( keyword == "OPENQASM" )
      {
        auto const version = cursor.identifier();
        if ( version != "2.0" )
        {
          throw qasm_error( line_number, "unsupported OPENQASM version" );
        }
        seen_version = true;
      }
      else if ( keyword == "include" )
      {
        /* the emitted include carries no information for this gate set */
        cursor.pos = cursor.text.size();
      }
      else if ( keyword == "qreg" )
      {
        auto const name = cursor.identifier();
        cursor.consume( '[' );
        auto const size = cursor.number();
        cursor.consume( ']' );
        for ( auto const& reg : registers )
        {
          if ( reg.first == name )
          {
            throw qasm_error( line_number,
                              fmt::format( "register {} redeclared", name ) );
          }
        }
        registers.emplace_back( name, static_cast<uint32_t>( size ) );
        offsets.push_back( total_wires );
        total_wires += static_cast<uint32_t>( size );
      }
      else if ( keyword == "cx" )
      {
        auto const control = detail::parse_operand( cursor, registers, offsets );
        cursor.consume( ',' );
        auto const target = detail::parse_operand( cursor, registers, offsets );
        gates.push_back( {gate::op::cnot, target, control, {}} );
      }
      else if ( keyword == "h" )
      {
        auto const target = detail::parse_operand( cursor, registers, offsets );
        gates.push_back( {gate::op::hadamard, target, 0u, {}} );
      }
      else if ( keyword == "rz" )
      {
        cursor.consume( '(' );
        auto const theta = detail::parse_angle( cursor );
        cursor.consume( ')' );
        auto const target = detail::parse_operand( cursor, registers, offsets );
        gates.push_back( {gate::op::rz, target, 0u, theta} );
      }
      else
      {
        throw qasm_error( line_number,
                          fmt::format( "unsupported statement {}", keyword ) );
      }
      if ( !cursor.at_end() )
      {
        throw qasm_error( line_number, "trailing characters in statement" );
      }
    }
  }

  if ( !seen_version )
  {
    throw qasm_error( line_number, "missing OPENQASM header" );
  }

  qasm_program program;
  program.parsed = circuit( total_wires );
  for ( auto const& g : gates )
  {
    switch ( g.kind )
    {
    case gate::op::cnot:
      program.parsed.add_cnot( g.control, g.target );
      break;
    case gate::op::hadamard:
      program.parsed.add_h( g.target );
      break;
    case gate::op::rz:
      program.parsed.add_rz( g.target, g.theta );
      break;
    }
  }
  for ( uint32_t i = 0u; i < registers.size(); ++i )
  {
    if ( registers[i].first == "x" )
    {
      if ( offsets[i] != 0u )
      {
        throw qasm_error( line_number, "register x must be declared first" );
      }
      program.layout.num_inputs = registers[i].second;
    }
    else if ( registers[i].first == "y" )
    {
      program.layout.num_outputs = registers[i].second;
    }
  }
  for ( uint32_t i = 0u; i < registers.size(); ++i )
  {
    if ( registers[i].first == "y" && offsets[i] != program.layout.num_inputs )
    {
      throw qasm_error( line_number, "register y must follow the inputs" );
    }
  }
  return program;
}

inline qasm_program read_qasm_string( std::string const& text )
{
  std::istringstream in( text );
  return read_qasm( in );
}

} // namespace qoracle
