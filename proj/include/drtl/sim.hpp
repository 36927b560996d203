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
  \file sim.hpp
  \brief Cycle-accurate streaming simulation of pipelined threshold
         networks and equivalence checking against the Boolean oracle
*/

#pragma once

#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "bench.hpp"
#include "pipeline.hpp"
#include "tlg.hpp"

namespace drtl
{

/*! \brief One pipeline instance: per-stage register values plus a
 *         cycle counter.  Outputs are suppressed until the first input
 *         has traversed every stage. */
class simulator
{
public:
  /*! \param conductance_mode evaluate through differential conductance
   *        realizations on `device` instead of the behavioral gate */
  explicit simulator( pipelined_network const& p, bool conductance_mode = false,
                      device_model const& device = device_model::ideal() )
      : conductance_mode_( conductance_mode )
  {
    validate( p );
    depth_ = p.depth();
    num_inputs_ = p.primary_inputs.size();

    /* compile net names to per-stage indices once */
    std::unordered_map<std::string, std::size_t> prev_index;
    for ( std::size_t i = 0; i < p.primary_inputs.size(); ++i )
      prev_index[p.primary_inputs[i]] = i;
    nodes_.resize( depth_ );
    regs_.resize( depth_ );
    next_.resize( depth_ );
    for ( std::size_t s = 0; s < depth_; ++s )
    {
      std::unordered_map<std::string, std::size_t> this_index;
      for ( auto const& node : p.stages[s] )
      {
        compiled_node cn;
        cn.gate = node.gate;
        for ( auto const& in : node.inputs )
          cn.sources.push_back( prev_index.at( in ) );
        if ( conductance_mode_ )
          cn.realization = to_conductances( node.gate, device );
        this_index[node.output] = nodes_[s].size();
        nodes_[s].push_back( std::move( cn ) );
      }
      regs_[s].assign( nodes_[s].size(), 0 );
      next_[s].assign( nodes_[s].size(), 0 );
      prev_index = std::move( this_index );
    }
    for ( auto const& po : p.primary_outputs )
      output_index_.push_back( prev_index.at( po ) );
  }

  std::size_t depth() const { return depth_; }
  std::size_t cycle() const { return cycle_; }

  /*! \brief Advances one clock: stage 1 consumes the new inputs, stage
   *         k the previous cycle's stage k-1 registers.  Returns the
   *         primary outputs once cycle >= depth, nullopt before. */
  std::optional<std::vector<bool>> step( std::vector<bool> const& inputs )
  {
    if ( inputs.size() != num_inputs_ )
    {
      throw tlg_error( "stimulus arity mismatch" );
    }
    std::vector<char> pi_vals( inputs.begin(), inputs.end() );
    std::vector<bool> ins;
    for ( std::size_t s = 0; s < depth_; ++s )
    {
      auto const& prev = s == 0 ? pi_vals : regs_[s - 1];
      for ( std::size_t i = 0; i < nodes_[s].size(); ++i )
      {
        auto const& cn = nodes_[s][i];
        ins.clear();
        for ( auto const src : cn.sources )
          ins.push_back( prev[src] != 0 );
        next_[s][i] = conductance_mode_ ? latch_evaluate( cn.realization, ins ) : evaluate( cn.gate, ins );
      }
    }
    std::swap( regs_, next_ );
    ++cycle_;
    if ( cycle_ < depth_ )
      return std::nullopt;
    std::vector<bool> out;
    out.reserve( output_index_.size() );
    for ( auto const idx : output_index_ )
      out.push_back( regs_.back()[idx] != 0 );
    return out;
  }

private:
  struct compiled_node
  {
    threshold_gate gate;
    std::vector<std::size_t> sources; /* indices into the previous stage */
    conductance_realization realization;
  };

  bool conductance_mode_;
  std::size_t depth_{ 0 };
  std::size_t num_inputs_{ 0 };
  std::vector<std::vector<compiled_node>> nodes_;
  std::vector<std::size_t> output_index_;
  std::vector<std::vector<char>> regs_;
  std::vector<std::vector<char>> next_;
  std::size_t cycle_{ 0 };
};

struct verdict
{
  bool pass;
  std::vector<bool> counterexample; /* failing input vector, when !pass */
  std::vector<bool> expected;
  std::vector<bool> actual;
};

enum class check_mode
{
  exhaustive,
  random
};

/*! \brief Streams test vectors through the pipeline and compares each
 *         output (latency-shifted) against the Boolean oracle.
 *
 * Exhaustive mode enumerates all 2^n vectors (n <= 20); random mode
 * draws `count` uniform vectors from `seed`.
 */
inline verdict equivalence_check( bool_network const& ref, pipelined_network const& p, check_mode mode,
                                  std::uint64_t count = 10000, std::uint64_t seed = 1 )
{
  if ( ref.primary_inputs.size() != p.primary_inputs.size() ||
       ref.primary_outputs.size() != p.primary_outputs.size() )
  {
    throw network_error( "primary input/output mismatch between reference and pipeline" );
  }
  auto const n = ref.primary_inputs.size();
  if ( mode == check_mode::exhaustive )
  {
    if ( n > 20 )
    {
      throw network_error( "exhaustive mode limited to 20 primary inputs" );
    }
    count = std::uint64_t( 1 ) << n;
  }

  /* the pipeline may list PIs/POs in the same order but the reference's
   * assignment is by name; map pipeline order onto reference order */
  std::unordered_map<std::string, std::size_t> ref_pi;
  for ( std::size_t i = 0; i < ref.primary_inputs.size(); ++i )
    ref_pi[ref.primary_inputs[i]] = i;
  std::vector<std::size_t> pi_map( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    auto const it = ref_pi.find( p.primary_inputs[i] );
    if ( it == ref_pi.end() )
    {
      throw network_error( "pipeline input '" + p.primary_inputs[i] + "' not a reference input" );
    }
    pi_map[i] = it->second;
  }
  /* buffered POs carry a `__s<k>` suffix; strip it for name matching */
  auto base_name = []( std::string const& name ) {
    auto const pos = name.rfind( "__s" );
    return pos == std::string::npos ? name : name.substr( 0, pos );
  };
  std::unordered_map<std::string, std::size_t> ref_po;
  for ( std::size_t i = 0; i < ref.primary_outputs.size(); ++i )
    ref_po[ref.primary_outputs[i]] = i;
  std::vector<std::size_t> po_map( p.primary_outputs.size() );
  for ( std::size_t i = 0; i < p.primary_outputs.size(); ++i )
  {
    auto const it = ref_po.find( base_name( p.primary_outputs[i] ) );
    if ( it == ref_po.end() )
    {
      throw network_error( "pipeline output '" + p.primary_outputs[i] + "' not a reference output" );
    }
    po_map[i] = it->second;
  }

  simulator sim( p );
  reference_evaluator oracle( ref );
  std::mt19937_64 rng( seed );
  std::vector<std::vector<bool>> in_flight; /* reference-order vectors awaiting output */
  auto make_vector = [&]( std::uint64_t index ) {
    std::vector<bool> ref_bits( n );
    if ( mode == check_mode::exhaustive )
    {
      for ( std::size_t i = 0; i < n; ++i )
        ref_bits[i] = ( index >> i ) & 1;
    }
    else
    {
      for ( std::size_t i = 0; i < n; ++i )
        ref_bits[i] = std::uniform_int_distribution<int>( 0, 1 )( rng );
    }
    return ref_bits;
  };

  std::uint64_t emitted = 0;
  std::uint64_t checked = 0;
  std::vector<bool> zero( n, false );
  while ( checked < count )
  {
    std::vector<bool> ref_bits = emitted < count ? make_vector( emitted ) : zero;
    if ( emitted < count )
    {
      in_flight.push_back( ref_bits );
      ++emitted;
    }
    std::vector<bool> pipe_bits( n );
    for ( std::size_t i = 0; i < n; ++i )
      pipe_bits[i] = ref_bits[pi_map[i]];
    auto const out = sim.step( pipe_bits );
    if ( !out )
      continue;
    auto const& vec = in_flight.front();
    auto const expected = oracle( vec );
    std::vector<bool> actual( expected.size() );
    for ( std::size_t i = 0; i < po_map.size(); ++i )
      actual[po_map[i]] = ( *out )[i];
    if ( actual != expected )
    {
      return { false, vec, expected, actual };
    }
    in_flight.erase( in_flight.begin() );
    ++checked;
  }
  return { true, {}, {}, {} };
}

/*! \brief Runs a stimulus stream (one `01`-line per cycle over the PIs)
 *         and renders the response stream, `X` rows during the
 *         not-ready window. */
inline std::string run_stimulus( pipelined_network const& p, std::istream& stimulus )
{
  simulator sim( p );
  std::ostringstream os;
  std::string line;
  while ( std::getline( stimulus, line ) )
  {
    if ( line.empty() || line[0] == '#' )
      continue;
    if ( line.size() != p.primary_inputs.size() )
    {
      throw tlg_error( "stimulus line has " + std::to_string( line.size() ) + " bits, expected " +
                       std::to_string( p.primary_inputs.size() ) );
    }
    std::vector<bool> bits;
    for ( auto const c : line )
    {
      if ( c != '0' && c != '1' )
        throw tlg_error( "stimulus must be 0/1" );
      bits.push_back( c == '1' );
    }
    auto const out = sim.step( bits );
    if ( !out )
    {
      os << std::string( p.primary_outputs.size(), 'X' ) << "\n";
    }
    else
    {
      for ( auto const b : *out )
        os << ( b ? '1' : '0' );
      os << "\n";
    }
  }
  return os.str();
}

} // namespace drtl
