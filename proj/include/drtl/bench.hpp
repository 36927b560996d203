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
  \file bench.hpp
  \brief `.bench` netlist parsing, Boolean network model, reference evaluation
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace drtl
{

class parse_error : public std::runtime_error
{
public:
  parse_error( std::string const& msg, unsigned line, unsigned column )
      : std::runtime_error( "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + msg ),
        line( line ), column( column )
  {
  }

  unsigned line;
  unsigned column;
};

class network_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class gate_kind
{
  AND,
  NAND,
  OR,
  NOR,
  XOR,
  XNOR,
  NOT,
  BUF
};

inline std::string to_string( gate_kind k )
{
  switch ( k )
  {
  case gate_kind::AND: return "AND";
  case gate_kind::NAND: return "NAND";
  case gate_kind::OR: return "OR";
  case gate_kind::NOR: return "NOR";
  case gate_kind::XOR: return "XOR";
  case gate_kind::XNOR: return "XNOR";
  case gate_kind::NOT: return "NOT";
  case gate_kind::BUF: return "BUF";
  }
  return "?";
}

inline bool is_unary( gate_kind k )
{
  return k == gate_kind::NOT || k == gate_kind::BUF;
}

struct bool_gate
{
  std::string output;
  gate_kind kind;
  std::vector<std::string> inputs;
};

/*! \brief Combinational Boolean network parsed from `.bench` text.
 *
 * Immutable after construction; the functional reference for every
 * downstream transformation.  Invariants (single driver per net,
 * acyclicity, arity) are enforced by `parse_bench` / `validate`.
 */
struct bool_network
{
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;
  std::vector<bool_gate> gates;
};

namespace detail
{

inline bool is_ident_char( char c )
{
  return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_' || c == '.' || c == '[' || c == ']';
}

inline std::string upper( std::string s )
{
  std::transform( s.begin(), s.end(), s.begin(), []( unsigned char c ) { return std::toupper( c ); } );
  return s;
}

inline std::optional<gate_kind> kind_from_keyword( std::string const& kw )
{
  auto const u = upper( kw );
  if ( u == "AND" ) return gate_kind::AND;
  if ( u == "NAND" ) return gate_kind::NAND;
  if ( u == "OR" ) return gate_kind::OR;
  if ( u == "NOR" ) return gate_kind::NOR;
  if ( u == "XOR" ) return gate_kind::XOR;
  if ( u == "XNOR" ) return gate_kind::XNOR;
  if ( u == "NOT" ) return gate_kind::NOT;
  if ( u == "BUF" || u == "BUFF" ) return gate_kind::BUF;
  return std::nullopt;
}

class line_scanner
{
public:
  line_scanner( std::string const& line, unsigned lineno ) : line_( line ), lineno_( lineno ) {}

  void skip_ws()
  {
    while ( pos_ < line_.size() && std::isspace( static_cast<unsigned char>( line_[pos_] ) ) )
      ++pos_;
  }

  bool eol()
  {
    skip_ws();
    return pos_ >= line_.size();
  }

  char peek()
  {
    skip_ws();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }

  void expect( char c )
  {
    skip_ws();
    if ( pos_ >= line_.size() || line_[pos_] != c )
    {
      fail( std::string( "expected '" ) + c + "'" );
    }
    ++pos_;
  }

  std::string ident()
  {
    skip_ws();
    auto const start = pos_;
    while ( pos_ < line_.size() && is_ident_char( line_[pos_] ) )
      ++pos_;
    if ( pos_ == start )
    {
      fail( "expected identifier" );
    }
    return line_.substr( start, pos_ - start );
  }

  [[noreturn]] void fail( std::string const& msg ) const
  {
    throw parse_error( msg, lineno_, static_cast<unsigned>( pos_ + 1 ) );
  }

private:
  std::string const& line_;
  unsigned lineno_;
  std::size_t pos_{ 0 };
};

} // namespace detail

/*! \brief Checks all bool_network invariants, throwing network_error on violation. */
inline void validate( bool_network const& net )
{
  std::unordered_set<std::string> driven;
  for ( auto const& pi : net.primary_inputs )
  {
    if ( !driven.insert( pi ).second )
    {
      throw network_error( "duplicate primary input '" + pi + "'" );
    }
  }
  std::unordered_map<std::string, std::size_t> driver_gate;
  for ( std::size_t i = 0; i < net.gates.size(); ++i )
  {
    auto const& g = net.gates[i];
    if ( g.inputs.empty() )
    {
      throw network_error( "gate '" + g.output + "' has no inputs" );
    }
    if ( is_unary( g.kind ) ? g.inputs.size() != 1 : g.inputs.size() < 2 )
    {
      throw network_error( "gate '" + g.output + "': arity " + std::to_string( g.inputs.size() ) +
                           " invalid for " + to_string( g.kind ) );
    }
    if ( !driven.insert( g.output ).second )
    {
      throw network_error( "net '" + g.output + "' has more than one driver" );
    }
    driver_gate[g.output] = i;
  }
  for ( auto const& g : net.gates )
  {
    for ( auto const& in : g.inputs )
    {
      if ( !driven.count( in ) )
      {
        throw network_error( "net '" + in + "' used by gate '" + g.output + "' is undriven" );
      }
    }
  }
  for ( auto const& po : net.primary_outputs )
  {
    if ( !driven.count( po ) )
    {
      throw network_error( "primary output '" + po + "' is undriven" );
    }
  }

  /* cycle check: DFS over gate graph */
  enum class mark : uint8_t { white, grey, black };
  std::vector<mark> marks( net.gates.size(), mark::white );
  std::vector<std::pair<std::size_t, std::size_t>> stack; /* (gate index, next input) */
  for ( std::size_t root = 0; root < net.gates.size(); ++root )
  {
    if ( marks[root] != mark::white )
      continue;
    marks[root] = mark::grey;
    stack.emplace_back( root, 0 );
    while ( !stack.empty() )
    {
      auto& [g, next] = stack.back();
      if ( next < net.gates[g].inputs.size() )
      {
        auto const it = driver_gate.find( net.gates[g].inputs[next++] );
        if ( it != driver_gate.end() )
        {
          if ( marks[it->second] == mark::grey )
          {
            throw network_error( "combinational cycle through net '" + net.gates[it->second].output + "'" );
          }
          if ( marks[it->second] == mark::white )
          {
            marks[it->second] = mark::grey;
            stack.emplace_back( it->second, 0 );
          }
        }
      }
      else
      {
        marks[g] = mark::black;
        stack.pop_back();
      }
    }
  }
}

/*! \brief Parses `.bench` text into a validated bool_network.
 *
 * Grammar: `INPUT(<id>)`, `OUTPUT(<id>)`, `<id> = <OP>(<id>{, <id>})`,
 * `#` comments, blank lines.  Operator keywords are case-insensitive,
 * net identifiers case-sensitive, `BUFF` accepted as alias for `BUF`.
 */
inline bool_network parse_bench( std::istream& is )
{
  bool_network net;
  std::unordered_set<std::string> input_names;
  std::string line;
  unsigned lineno = 0;
  while ( std::getline( is, line ) )
  {
    ++lineno;
    if ( auto const hash = line.find( '#' ); hash != std::string::npos )
    {
      line.erase( hash );
    }
    detail::line_scanner sc( line, lineno );
    if ( sc.eol() )
      continue;

    auto const first = sc.ident();
    if ( sc.peek() == '(' )
    {
      auto const kw = detail::upper( first );
      if ( kw != "INPUT" && kw != "OUTPUT" )
      {
        sc.fail( "expected INPUT, OUTPUT or assignment" );
      }
      sc.expect( '(' );
      auto const name = sc.ident();
      sc.expect( ')' );
      if ( !sc.eol() )
      {
        sc.fail( "trailing characters" );
      }
      if ( kw == "INPUT" )
      {
        if ( !input_names.insert( name ).second )
        {
          sc.fail( "duplicate INPUT declaration for '" + name + "'" );
        }
        net.primary_inputs.push_back( name );
      }
      else
      {
        net.primary_outputs.push_back( name );
      }
      continue;
    }

    sc.expect( '=' );
    auto const op = sc.ident();
    auto const kind = detail::kind_from_keyword( op );
    if ( !kind )
    {
      sc.fail( "unknown operator '" + op + "'" );
    }
    sc.expect( '(' );
    bool_gate g{ first, *kind, {} };
    g.inputs.push_back( sc.ident() );
    while ( sc.peek() == ',' )
    {
      sc.expect( ',' );
      g.inputs.push_back( sc.ident() );
    }
    sc.expect( ')' );
    if ( !sc.eol() )
    {
      sc.fail( "trailing characters" );
    }
    if ( input_names.count( g.output ) )
    {
      sc.fail( "net '" + g.output + "' declared INPUT cannot be assigned a driver" );
    }
    net.gates.push_back( std::move( g ) );
  }

  validate( net );
  return net;
}

inline bool_network parse_bench( std::string const& text )
{
  std::istringstream is( text );
  return parse_bench( is );
}

/*! \brief Writes a network back in `.bench` syntax; inverse of parse_bench. */
inline void serialize_bench( bool_network const& net, std::ostream& os )
{
  for ( auto const& pi : net.primary_inputs )
    os << "INPUT(" << pi << ")\n";
  for ( auto const& po : net.primary_outputs )
    os << "OUTPUT(" << po << ")\n";
  for ( auto const& g : net.gates )
  {
    os << g.output << " = " << to_string( g.kind ) << "(";
    for ( std::size_t i = 0; i < g.inputs.size(); ++i )
    {
      os << ( i ? ", " : "" ) << g.inputs[i];
    }
    os << ")\n";
  }
}

inline std::string serialize_bench( bool_network const& net )
{
  std::ostringstream os;
  serialize_bench( net, os );
  return os.str();
}

/*! \brief Gates in dependency order; ties broken by declaration order. */
inline std::vector<std::size_t> topological_order( bool_network const& net )
{
  std::unordered_map<std::string, std::size_t> driver_gate;
  for ( std::size_t i = 0; i < net.gates.size(); ++i )
  {
    driver_gate[net.gates[i].output] = i;
  }
  std::vector<std::size_t> indeg( net.gates.size(), 0 );
  std::vector<std::vector<std::size_t>> consumers( net.gates.size() );
  for ( std::size_t i = 0; i < net.gates.size(); ++i )
  {
    for ( auto const& in : net.gates[i].inputs )
    {
      if ( auto const it = driver_gate.find( in ); it != driver_gate.end() )
      {
        ++indeg[i];
        consumers[it->second].push_back( i );
      }
    }
  }
  /* Kahn's algorithm with an index-ordered ready set keeps the order
   * deterministic: among ready gates, lowest declaration index first. */
  std::vector<std::size_t> order;
  order.reserve( net.gates.size() );
  std::map<std::size_t, bool> ready;
  for ( std::size_t i = 0; i < net.gates.size(); ++i )
  {
    if ( indeg[i] == 0 )
      ready[i] = true;
  }
  while ( !ready.empty() )
  {
    auto const g = ready.begin()->first;
    ready.erase( ready.begin() );
    order.push_back( g );
    for ( auto const c : consumers[g] )
    {
      if ( --indeg[c] == 0 )
        ready[c] = true;
    }
  }
  return order;
}

inline bool eval_gate( gate_kind kind, std::vector<bool> const& ins )
{
  switch ( kind )
  {
  case gate_kind::AND:
    return std::all_of( ins.begin(), ins.end(), []( bool b ) { return b; } );
  case gate_kind::NAND:
    return !std::all_of( ins.begin(), ins.end(), []( bool b ) { return b; } );
  case gate_kind::OR:
    return std::any_of( ins.begin(), ins.end(), []( bool b ) { return b; } );
  case gate_kind::NOR:
    return !std::any_of( ins.begin(), ins.end(), []( bool b ) { return b; } );
  case gate_kind::XOR:
  case gate_kind::XNOR:
  {
    bool acc = false;
    for ( auto const b : ins )
      acc ^= b;
    return kind == gate_kind::XOR ? acc : !acc;
  }
  case gate_kind::NOT:
    return !ins[0];
  case gate_kind::BUF:
    return ins[0];
  }
  return false;
}

/*! \brief Golden Boolean oracle: evaluates the network on one input assignment. */
inline std::vector<bool> eval_reference( bool_network const& net, std::unordered_map<std::string, bool> const& assignment )
{
  if ( assignment.size() != net.primary_inputs.size() )
  {
    throw network_error( "assignment covers " + std::to_string( assignment.size() ) + " nets, expected " +
                         std::to_string( net.primary_inputs.size() ) );
  }
  std::unordered_map<std::string, bool> values;
  for ( auto const& pi : net.primary_inputs )
  {
    auto const it = assignment.find( pi );
    if ( it == assignment.end() )
    {
      throw network_error( "missing assignment for primary input '" + pi + "'" );
    }
    values[pi] = it->second;
  }
  std::vector<bool> ins;
  for ( auto const gi : topological_order( net ) )
  {
    auto const& g = net.gates[gi];
    ins.clear();
    for ( auto const& in : g.inputs )
      ins.push_back( values.at( in ) );
    values[g.output] = eval_gate( g.kind, ins );
  }
  std::vector<bool> out;
  out.reserve( net.primary_outputs.size() );
  for ( auto const& po : net.primary_outputs )
    out.push_back( values.at( po ) );
  return out;
}

/*! \brief Convenience overload: bits in primary-input declaration order. */
inline std::vector<bool> eval_reference( bool_network const& net, std::vector<bool> const& bits )
{
  if ( bits.size() != net.primary_inputs.size() )
  {
    throw network_error( "assignment size mismatch" );
  }
  std::unordered_map<std::string, bool> assignment;
  for ( std::size_t i = 0; i < bits.size(); ++i )
    assignment[net.primary_inputs[i]] = bits[i];
  return eval_reference( net, assignment );
}

/*! \brief Index-compiled evaluator for repeated reference evaluation. */
class reference_evaluator
{
public:
  explicit reference_evaluator( bool_network const& net )
  {
    std::unordered_map<std::string, std::size_t> slot;
    for ( std::size_t i = 0; i < net.primary_inputs.size(); ++i )
      slot[net.primary_inputs[i]] = i;
    num_inputs_ = net.primary_inputs.size();
    std::size_t next_slot = num_inputs_;
    for ( auto const& g : net.gates )
      slot[g.output] = next_slot++;
    num_slots_ = next_slot;
    for ( auto const gi : topological_order( net ) )
    {
      auto const& g = net.gates[gi];
      compiled_gate cg{ g.kind, slot.at( g.output ), {} };
      for ( auto const& in : g.inputs )
        cg.sources.push_back( slot.at( in ) );
      gates_.push_back( std::move( cg ) );
    }
    for ( auto const& po : net.primary_outputs )
      output_slot_.push_back( slot.at( po ) );
  }

  std::vector<bool> operator()( std::vector<bool> const& bits ) const
  {
    if ( bits.size() != num_inputs_ )
    {
      throw network_error( "assignment size mismatch" );
    }
    std::vector<char> values( num_slots_, 0 );
    for ( std::size_t i = 0; i < bits.size(); ++i )
      values[i] = bits[i];
    for ( auto const& g : gates_ )
    {
      bool v;
      switch ( g.kind )
      {
      case gate_kind::AND:
      case gate_kind::NAND:
        v = true;
        for ( auto const s : g.sources )
          v = v && values[s];
        if ( g.kind == gate_kind::NAND )
          v = !v;
        break;
      case gate_kind::OR:
      case gate_kind::NOR:
        v = false;
        for ( auto const s : g.sources )
          v = v || values[s];
        if ( g.kind == gate_kind::NOR )
          v = !v;
        break;
      case gate_kind::XOR:
      case gate_kind::XNOR:
        v = false;
        for ( auto const s : g.sources )
          v = v != ( values[s] != 0 );
        if ( g.kind == gate_kind::XNOR )
          v = !v;
        break;
      case gate_kind::NOT:
        v = !values[g.sources[0]];
        break;
      default:
        v = values[g.sources[0]];
        break;
      }
      values[g.target] = v;
    }
    std::vector<bool> out;
    out.reserve( output_slot_.size() );
    for ( auto const s : output_slot_ )
      out.push_back( values[s] != 0 );
    return out;
  }

private:
  struct compiled_gate
  {
    gate_kind kind;
    std::size_t target;
    std::vector<std::size_t> sources;
  };

  std::size_t num_inputs_;
  std::size_t num_slots_;
  std::vector<compiled_gate> gates_;
  std::vector<std::size_t> output_slot_;
};

struct network_stats_record
{
  std::map<std::string, std::size_t> gates_by_kind;
  std::size_t num_gates{ 0 };
  std::size_t num_nets{ 0 };
  std::size_t max_fanin{ 0 };
  std::size_t max_fanout{ 0 };
  std::size_t depth{ 0 };
};

inline network_stats_record network_stats( bool_network const& net )
{
  network_stats_record r;
  r.num_gates = net.gates.size();
  std::unordered_map<std::string, std::size_t> fanout;
  std::unordered_set<std::string> nets( net.primary_inputs.begin(), net.primary_inputs.end() );
  for ( auto const& g : net.gates )
  {
    ++r.gates_by_kind[to_string( g.kind )];
    r.max_fanin = std::max( r.max_fanin, g.inputs.size() );
    nets.insert( g.output );
    for ( auto const& in : g.inputs )
      ++fanout[in];
  }
  r.num_nets = nets.size();
  for ( auto const& [_, n] : fanout )
    r.max_fanout = std::max( r.max_fanout, n );

  std::unordered_map<std::string, std::size_t> level;
  for ( auto const& pi : net.primary_inputs )
    level[pi] = 0;
  for ( auto const gi : topological_order( net ) )
  {
    auto const& g = net.gates[gi];
    std::size_t lvl = 0;
    for ( auto const& in : g.inputs )
      lvl = std::max( lvl, level.at( in ) );
    level[g.output] = lvl + 1;
  }
  for ( auto const& po : net.primary_outputs )
    r.depth = std::max( r.depth, level.at( po ) );
  return r;
}

} // namespace drtl
