/* drtl: threshold logic compiler and analysis library
 * Copyright (C) 2026
 *
 * Permission is hereby granted, free of charge, to any person
 * obtaining a copy of this software and associated documentation
 * files (the "Software"), to deal in the Software without
 * restriction, including without limitation the rights to use,
 * copy, modify, merge, publish, distribute, sublicense, and/or sell
 * copies of the Software, and to permit persons to whom the
 * Software is furnished to do so, subject to the following
 * conditions:
 *
 * The above copyright notice and this permission notice shall be
 * included in all copies or substantial portions of the Software.
 *
 * THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
 * EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES
 * OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND
 * NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
 * HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY,
 * WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
 * FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
 * OTHER DEALINGS IN THE SOFTWARE.
 */

/*!
  \file synth.hpp
  \brief Fan-in decomposition and library-based mapping of Boolean
         networks onto threshold gate networks
*/

#pragma once

#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "bench.hpp"
#include "tlg.hpp"

namespace drtl
{

struct tlg_node
{
  std::string output;
  threshold_gate gate;
  std::vector<std::string> inputs;
};

struct tlg_network
{
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;
  std::vector<tlg_node> nodes;
};

namespace detail
{

class temp_namer
{
public:
  explicit temp_namer( std::string suffix ) : suffix_( std::move( suffix ) ) {}

  std::string next( std::string const& base )
  {
    return base + suffix_ + std::to_string( counters_[base]++ );
  }

private:
  std::string suffix_;
  std::unordered_map<std::string, unsigned> counters_;
};

} // namespace detail

/*! \brief Rewrites every gate to fan-in <= limit.
 *
 * Wide AND/OR/NAND/NOR become balanced trees of the base operation with
 * the inversion applied only at the root; XOR/XNOR always decompose to
 * 2-input chains (XNOR keeps its inversion at the root).
 */
inline bool_network decompose_fanin( bool_network const& net, unsigned limit )
{
  if ( limit < 2 )
  {
    throw network_error( "fan-in limit must be >= 2" );
  }
  bool_network out;
  out.primary_inputs = net.primary_inputs;
  out.primary_outputs = net.primary_outputs;
  detail::temp_namer namer( "__t" );
  for ( auto const& g : net.gates )
  {
    unsigned const eff_limit = ( g.kind == gate_kind::XOR || g.kind == gate_kind::XNOR ) ? 2 : limit;
    if ( g.inputs.size() <= eff_limit )
    {
      out.gates.push_back( g );
      continue;
    }
    gate_kind base;
    bool invert_root;
    switch ( g.kind )
    {
    case gate_kind::AND: base = gate_kind::AND; invert_root = false; break;
    case gate_kind::NAND: base = gate_kind::AND; invert_root = true; break;
    case gate_kind::OR: base = gate_kind::OR; invert_root = false; break;
    case gate_kind::NOR: base = gate_kind::OR; invert_root = true; break;
    case gate_kind::XOR: base = gate_kind::XOR; invert_root = false; break;
    case gate_kind::XNOR: base = gate_kind::XOR; invert_root = true; break;
    default:
      out.gates.push_back( g );
      continue;
    }
    auto ins = g.inputs;
    /* reduce all but the root level with the base op */
    gate_kind const root = invert_root ? ( base == gate_kind::AND   ? gate_kind::NAND
                                           : base == gate_kind::OR  ? gate_kind::NOR
                                                                    : gate_kind::XNOR )
                                       : base;
    /* level-by-level reduction: grouping consecutive chunks keeps the
     * tree balanced (minimum depth); leftovers carry to the next level */
    while ( ins.size() > eff_limit )
    {
      std::vector<std::string> level;
      std::size_t i = 0;
      for ( ; i + eff_limit <= ins.size(); i += eff_limit )
      {
        auto const name = namer.next( g.output );
        out.gates.push_back( { name, base, { ins.begin() + i, ins.begin() + i + eff_limit } } );
        level.push_back( name );
      }
      for ( ; i < ins.size(); ++i )
        level.push_back( ins[i] );
      ins = std::move( level );
    }
    out.gates.push_back( { g.output, root, std::move( ins ) } );
  }
  validate( out );
  return out;
}

namespace detail
{

inline threshold_gate library_and( std::size_t n ) { return { std::vector<int>( n, 1 ), -( double( n ) - 0.5 ) }; }
inline threshold_gate library_or( std::size_t n ) { return { std::vector<int>( n, 1 ), -0.5 }; }
inline threshold_gate library_nand( std::size_t n ) { return { std::vector<int>( n, -1 ), double( n ) - 0.5 }; }
inline threshold_gate library_nor( std::size_t n ) { return { std::vector<int>( n, -1 ), 0.5 }; }
inline threshold_gate library_not() { return { { -1 }, 0.5 }; }
inline threshold_gate library_buf() { return { { 1 }, -0.5 }; }
/* XOR combiner: fires iff OR is high and AND is low */
inline threshold_gate library_xor_combine() { return { { -1, 1 }, -0.5 }; }

} // namespace detail

/*! \brief The fixed synthesis library for fan-in 2.
 *
 * Used by resolution and conductance-agreement checks; XOR's 3-node
 * expansion contributes its AND, OR and combiner members.
 */
inline std::vector<std::pair<std::string, threshold_gate>> synthesis_library()
{
  return {
      { "AND2", detail::library_and( 2 ) },   { "OR2", detail::library_or( 2 ) },
      { "NAND2", detail::library_nand( 2 ) }, { "NOR2", detail::library_nor( 2 ) },
      { "NOT", detail::library_not() },       { "BUF", detail::library_buf() },
      { "XORC", detail::library_xor_combine() },
  };
}

/*! \brief Maps a fan-in-decomposed Boolean network gate-by-gate onto
 *         threshold gates; XOR expands into AND + OR + combiner, XNOR
 *         into XOR followed by NOT. */
inline tlg_network synthesize( bool_network const& net, quantization_scheme const& scheme = {} )
{
  tlg_network out;
  out.primary_inputs = net.primary_inputs;
  out.primary_outputs = net.primary_outputs;
  /* "__x" keeps expansion temps disjoint from decompose_fanin's "__t" */
  detail::temp_namer namer( "__x" );

  auto emit = [&]( std::string const& name, threshold_gate gate, std::vector<std::string> ins ) {
    if ( !conforms( gate, scheme ) )
    {
      throw tlg_error( "gate for net '" + name + "' violates the quantization scheme" );
    }
    out.nodes.push_back( { name, std::move( gate ), std::move( ins ) } );
  };
  auto emit_xor = [&]( std::string const& name, std::vector<std::string> const& ins ) {
    auto const n_and = namer.next( name );
    auto const n_or = namer.next( name );
    emit( n_and, detail::library_and( 2 ), ins );
    emit( n_or, detail::library_or( 2 ), ins );
    emit( name, detail::library_xor_combine(), { n_and, n_or } );
  };

  for ( auto const& g : net.gates )
  {
    auto const n = g.inputs.size();
    if ( n > scheme.fanin_limit )
    {
      throw tlg_error( "gate '" + g.output + "' exceeds fan-in limit; run decompose_fanin first" );
    }
    switch ( g.kind )
    {
    case gate_kind::AND: emit( g.output, detail::library_and( n ), g.inputs ); break;
    case gate_kind::OR: emit( g.output, detail::library_or( n ), g.inputs ); break;
    case gate_kind::NAND: emit( g.output, detail::library_nand( n ), g.inputs ); break;
    case gate_kind::NOR: emit( g.output, detail::library_nor( n ), g.inputs ); break;
    case gate_kind::NOT: emit( g.output, detail::library_not(), g.inputs ); break;
    case gate_kind::BUF: emit( g.output, detail::library_buf(), g.inputs ); break;
    case gate_kind::XOR:
      emit_xor( g.output, g.inputs );
      break;
    case gate_kind::XNOR:
    {
      auto const n_xor = namer.next( g.output );
      emit_xor( n_xor, g.inputs );
      emit( g.output, detail::library_not(), { n_xor } );
      break;
    }
    }
  }
  return out;
}

/*! \brief Evaluates a tlg_network on one input vector (declaration order). */
inline std::vector<bool> eval_tlg( tlg_network const& net, std::vector<bool> const& bits )
{
  if ( bits.size() != net.primary_inputs.size() )
  {
    throw tlg_error( "assignment size mismatch" );
  }
  std::unordered_map<std::string, bool> values;
  for ( std::size_t i = 0; i < bits.size(); ++i )
    values[net.primary_inputs[i]] = bits[i];
  std::vector<bool> ins;
  for ( auto const& node : net.nodes ) /* synthesize emits in topological order */
  {
    ins.clear();
    for ( auto const& in : node.inputs )
      ins.push_back( values.at( in ) );
    values[node.output] = evaluate( node.gate, ins );
  }
  std::vector<bool> out;
  for ( auto const& po : net.primary_outputs )
    out.push_back( values.at( po ) );
  return out;
}

/*! \brief Node counts after decompose + synthesize for each fan-in limit. */
inline std::map<unsigned, std::size_t> node_count_study( bool_network const& net, std::vector<unsigned> const& limits )
{
  std::map<unsigned, std::size_t> table;
  for ( auto const limit : limits )
  {
    auto const scheme = quantization_scheme::default_for( limit );
    table[limit] = synthesize( decompose_fanin( net, limit ), scheme ).nodes.size();
  }
  return table;
}

inline std::string format_bias( double b )
{
  std::ostringstream os;
  os << b; /* half-integers print exactly: -1.5, 0.5, ... */
  return os.str();
}

/*! \brief Line-oriented text form: PI/PO headers then
 *         `out = TLG([w1,...], b)(in1, ...)` per node. */
inline void serialize_tlg( tlg_network const& net, std::ostream& os )
{
  for ( auto const& pi : net.primary_inputs )
    os << "INPUT(" << pi << ")\n";
  for ( auto const& po : net.primary_outputs )
    os << "OUTPUT(" << po << ")\n";
  for ( auto const& node : net.nodes )
  {
    os << node.output << " = TLG([";
    for ( std::size_t i = 0; i < node.gate.weights.size(); ++i )
      os << ( i ? "," : "" ) << node.gate.weights[i];
    os << "], " << format_bias( node.gate.bias ) << ")(";
    for ( std::size_t i = 0; i < node.inputs.size(); ++i )
      os << ( i ? ", " : "" ) << node.inputs[i];
    os << ")\n";
  }
}

inline std::string serialize_tlg( tlg_network const& net )
{
  std::ostringstream os;
  serialize_tlg( net, os );
  return os.str();
}

namespace detail
{

inline tlg_node parse_tlg_line( std::string const& line, unsigned lineno )
{
  line_scanner sc( line, lineno );
  tlg_node node;
  node.output = sc.ident();
  sc.expect( '=' );
  if ( auto const kw = sc.ident(); kw != "TLG" )
    sc.fail( "expected TLG" );
  sc.expect( '(' );
  sc.expect( '[' );
  auto read_number = [&]() {
    std::string tok;
    while ( true )
    {
      auto const c = sc.peek();
      if ( ( c >= '0' && c <= '9' ) || c == '-' || c == '+' || c == '.' )
      {
        tok += c;
        sc.expect( c );
      }
      else
        break;
    }
    if ( tok.empty() )
      sc.fail( "expected number" );
    return std::stod( tok );
  };
  node.gate.weights.push_back( static_cast<int>( read_number() ) );
  while ( sc.peek() == ',' )
  {
    sc.expect( ',' );
    node.gate.weights.push_back( static_cast<int>( read_number() ) );
  }
  sc.expect( ']' );
  sc.expect( ',' );
  node.gate.bias = read_number();
  sc.expect( ')' );
  sc.expect( '(' );
  node.inputs.push_back( sc.ident() );
  while ( sc.peek() == ',' )
  {
    sc.expect( ',' );
    node.inputs.push_back( sc.ident() );
  }
  sc.expect( ')' );
  if ( !sc.eol() )
    sc.fail( "trailing characters" );
  if ( node.inputs.size() != node.gate.weights.size() )
    sc.fail( "weight/input count mismatch" );
  validate( node.gate );
  return node;
}

} // namespace detail

inline tlg_network parse_tlg( std::istream& is )
{
  tlg_network net;
  std::string line;
  unsigned lineno = 0;
  while ( std::getline( is, line ) )
  {
    ++lineno;
    if ( auto const hash = line.find( '#' ); hash != std::string::npos )
      line.erase( hash );
    detail::line_scanner sc( line, lineno );
    if ( sc.eol() )
      continue;
    if ( line.find( "INPUT(" ) == line.find_first_not_of( " \t" ) && line.find( '=' ) == std::string::npos )
    {
      detail::line_scanner hs( line, lineno );
      hs.ident();
      hs.expect( '(' );
      net.primary_inputs.push_back( hs.ident() );
      hs.expect( ')' );
      continue;
    }
    if ( line.find( "OUTPUT(" ) == line.find_first_not_of( " \t" ) && line.find( '=' ) == std::string::npos )
    {
      detail::line_scanner hs( line, lineno );
      hs.ident();
      hs.expect( '(' );
      net.primary_outputs.push_back( hs.ident() );
      hs.expect( ')' );
      continue;
    }
    net.nodes.push_back( detail::parse_tlg_line( line, lineno ) );
  }
  return net;
}

inline tlg_network parse_tlg( std::string const& text )
{
  std::istringstream is( text );
  return parse_tlg( is );
}

} // namespace drtl
