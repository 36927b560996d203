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
  \file pipeline.hpp
  \brief ASAP levelization with buffer insertion: every edge crosses
         exactly one register boundary
*/

#pragma once

#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "synth.hpp"

namespace drtl
{

/*! \brief Fully pipelined threshold network.
 *
 * stages[s] holds the nodes evaluated in logic stage s+1; each reads
 * only nets registered at the previous stage (stage 0 = primary
 * inputs).  All primary outputs leave the final stage.
 */
struct pipelined_network
{
  std::vector<std::vector<tlg_node>> stages;
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;
  double clock_period_ns{ 0.5 };

  std::size_t depth() const { return stages.size(); }

  std::size_t node_count() const
  {
    std::size_t n = 0;
    for ( auto const& s : stages )
      n += s.size();
    return n;
  }
};

/*! \brief ASAP levelization.
 *
 * Node stage = 1 + max producer stage.  Edges spanning k > 1 stages get
 * a chain of k-1 unit buffers (w=[1], b=-0.5); primary outputs are
 * buffered out to the final stage so one latency covers the block.
 */
inline pipelined_network levelize( tlg_network const& net, double clock_period_ns = 0.5 )
{
  /* ASAP levels over the DAG; nodes may appear in any order, so iterate
   * to fixpoint via an explicit topological pass */
  std::unordered_map<std::string, std::size_t> driver;
  for ( std::size_t i = 0; i < net.nodes.size(); ++i )
    driver[net.nodes[i].output] = i;

  std::unordered_map<std::string, std::size_t> level;
  for ( auto const& pi : net.primary_inputs )
    level[pi] = 0;
  std::vector<std::size_t> indeg( net.nodes.size(), 0 );
  std::vector<std::vector<std::size_t>> consumers( net.nodes.size() );
  std::vector<std::size_t> ready;
  for ( std::size_t i = 0; i < net.nodes.size(); ++i )
  {
    for ( auto const& in : net.nodes[i].inputs )
    {
      if ( auto const it = driver.find( in ); it != driver.end() )
      {
        ++indeg[i];
        consumers[it->second].push_back( i );
      }
      else if ( !level.count( in ) )
      {
        throw tlg_error( "net '" + in + "' is undriven" );
      }
    }
    if ( indeg[i] == 0 )
      ready.push_back( i );
  }
  std::vector<std::size_t> node_level( net.nodes.size(), 0 );
  std::size_t processed = 0;
  std::size_t max_level = 0;
  while ( !ready.empty() )
  {
    auto const i = ready.back();
    ready.pop_back();
    ++processed;
    std::size_t lvl = 0;
    for ( auto const& in : net.nodes[i].inputs )
    {
      auto const it = driver.find( in );
      lvl = std::max( lvl, it != driver.end() ? node_level[it->second] : 0 );
    }
    node_level[i] = lvl + 1;
    level[net.nodes[i].output] = lvl + 1;
    max_level = std::max( max_level, lvl + 1 );
    for ( auto const c : consumers[i] )
    {
      if ( --indeg[c] == 0 )
        ready.push_back( c );
    }
  }
  if ( processed != net.nodes.size() )
  {
    throw tlg_error( "cycle in threshold network" );
  }
  /* Primary outputs must leave the final stage. */
  std::size_t depth = std::max<std::size_t>( max_level, 1 );

  pipelined_network p;
  p.primary_inputs = net.primary_inputs;
  p.primary_outputs = net.primary_outputs;
  p.clock_period_ns = clock_period_ns;
  p.stages.assign( depth, {} );
  for ( std::size_t i = 0; i < net.nodes.size(); ++i )
    p.stages[node_level[i] - 1].push_back( net.nodes[i] );

  /* Buffer chains: a net produced at stage s and consumed at stage c > s + 1
   * gets registered copies `<net>__s<k>` at stages s+1 .. c-1. */
  std::unordered_map<std::string, std::size_t> produced_at = level;
  auto delayed_name = []( std::string const& net_name, std::size_t stage ) {
    return net_name + "__s" + std::to_string( stage );
  };
  std::unordered_map<std::string, std::size_t> last_copy; /* net -> highest stage with a copy */
  auto ensure_copy = [&]( std::string const& net_name, std::size_t stage ) -> std::string {
    /* returns the name carrying net_name's value at `stage` */
    auto const src_stage = produced_at.at( net_name );
    if ( stage == src_stage )
      return net_name;
    auto it = last_copy.find( net_name );
    std::size_t have = it != last_copy.end() ? it->second : src_stage;
    while ( have < stage )
    {
      auto const prev = have == src_stage ? net_name : delayed_name( net_name, have );
      ++have;
      p.stages[have - 1].push_back( { delayed_name( net_name, have ), detail::library_buf(), { prev } } );
    }
    last_copy[net_name] = std::max( have, stage );
    return delayed_name( net_name, stage );
  };

  /* ensure_copy only ever appends to stages before the one being
   * scanned, so iterating stage s stays safe */
  for ( std::size_t s = 0; s < depth; ++s )
  {
    for ( auto& node : p.stages[s] )
    {
      for ( auto& in : node.inputs )
      {
        if ( produced_at.at( in ) != s )
        {
          in = ensure_copy( in, s );
        }
      }
    }
  }
  /* equalize primary outputs to the final stage */
  for ( auto& po : p.primary_outputs )
  {
    if ( produced_at.at( po ) != depth )
      po = ensure_copy( po, depth );
  }
  return p;
}

/*! \brief Flattens a pipelined network back to a tlg_network (stage order). */
inline tlg_network flatten( pipelined_network const& p )
{
  tlg_network net;
  net.primary_inputs = p.primary_inputs;
  net.primary_outputs = p.primary_outputs;
  for ( auto const& stage : p.stages )
    for ( auto const& node : stage )
      net.nodes.push_back( node );
  return net;
}

struct timing_record
{
  std::size_t depth;
  double latency_ns;
  double throughput_period_ns;
};

inline timing_record timing_report( pipelined_network const& p )
{
  return { p.depth(), static_cast<double>( p.depth() ) * p.clock_period_ns, p.clock_period_ns };
}

/*! \brief Staged text format: tlg serialization with `STAGE k` headers. */
inline void serialize_staged( pipelined_network const& p, std::ostream& os )
{
  for ( auto const& pi : p.primary_inputs )
    os << "INPUT(" << pi << ")\n";
  for ( auto const& po : p.primary_outputs )
    os << "OUTPUT(" << po << ")\n";
  os << "CLOCK " << p.clock_period_ns << "\n";
  for ( std::size_t s = 0; s < p.stages.size(); ++s )
  {
    os << "STAGE " << ( s + 1 ) << "\n";
    for ( auto const& node : p.stages[s] )
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
}

inline std::string serialize_staged( pipelined_network const& p )
{
  std::ostringstream os;
  serialize_staged( p, os );
  return os.str();
}

inline pipelined_network parse_staged( std::istream& is )
{
  pipelined_network p;
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
    std::istringstream ls( line );
    std::string head;
    ls >> head;
    if ( head == "STAGE" )
    {
      std::size_t k;
      ls >> k;
      if ( k != p.stages.size() + 1 )
        sc.fail( "stages must be consecutive from 1" );
      p.stages.emplace_back();
      continue;
    }
    if ( head == "CLOCK" )
    {
      ls >> p.clock_period_ns;
      continue;
    }
    if ( line.find( '=' ) == std::string::npos )
    {
      detail::line_scanner hs( line, lineno );
      auto const kw = hs.ident();
      hs.expect( '(' );
      auto const name = hs.ident();
      hs.expect( ')' );
      if ( detail::upper( kw ) == "INPUT" )
        p.primary_inputs.push_back( name );
      else if ( detail::upper( kw ) == "OUTPUT" )
        p.primary_outputs.push_back( name );
      else
        hs.fail( "expected INPUT or OUTPUT" );
      continue;
    }
    if ( p.stages.empty() )
      sc.fail( "node before first STAGE header" );
    p.stages.back().push_back( detail::parse_tlg_line( line, lineno ) );
  }
  return p;
}

inline pipelined_network parse_staged( std::string const& text )
{
  std::istringstream is( text );
  return parse_staged( is );
}

/*! \brief Checks the one-stage-per-edge invariant by scanning every edge. */
inline void validate( pipelined_network const& p )
{
  if ( p.clock_period_ns <= 0.0 )
  {
    throw tlg_error( "clock period must be positive" );
  }
  std::unordered_map<std::string, std::size_t> produced_at;
  for ( auto const& pi : p.primary_inputs )
    produced_at[pi] = 0;
  for ( std::size_t s = 0; s < p.stages.size(); ++s )
  {
    for ( auto const& node : p.stages[s] )
    {
      if ( !produced_at.emplace( node.output, s + 1 ).second )
      {
        throw tlg_error( "net '" + node.output + "' has more than one driver" );
      }
    }
  }
  for ( std::size_t s = 0; s < p.stages.size(); ++s )
  {
    for ( auto const& node : p.stages[s] )
    {
      for ( auto const& in : node.inputs )
      {
        auto const it = produced_at.find( in );
        if ( it == produced_at.end() )
          throw tlg_error( "net '" + in + "' is undriven" );
        if ( it->second != s )
          throw tlg_error( "edge '" + in + "' -> '" + node.output + "' spans " +
                           std::to_string( s + 1 - it->second ) + " stages" );
      }
    }
  }
  for ( auto const& po : p.primary_outputs )
  {
    auto const it = produced_at.find( po );
    if ( it == produced_at.end() )
      throw tlg_error( "primary output '" + po + "' is undriven" );
    if ( it->second != p.stages.size() )
      throw tlg_error( "primary output '" + po + "' not in final stage" );
  }
}

} // namespace drtl
