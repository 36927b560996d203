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
  \file interconnect.hpp
  \brief Stage-boundary crossbar mapping, fan-out accounting and
         off-state leakage
*/

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pipeline.hpp"

namespace drtl
{

/*! \brief Crossbar between two pipeline stages: rows drive, columns
 *         are receiver input pins; exactly one ON cell per column. */
struct crossbar_config
{
  std::vector<std::string> rows;               /* stage s output nets */
  std::vector<std::string> cols;               /* "<node>.<pin>" receiver slots */
  std::vector<std::vector<bool>> cells;        /* true = ON */
  double r_on{ 200.0 };                        /* ohm */
  double r_off{ 10e6 };                        /* ohm */
  double swing{ 0.25 };                        /* volt */

  std::size_t on_count() const
  {
    std::size_t n = 0;
    for ( auto const& row : cells )
      for ( auto const c : row )
        n += c;
    return n;
  }

  std::size_t off_count() const { return rows.size() * cols.size() - on_count(); }
};

/*! \brief Crossbar for the boundary between stage s and stage s+1.
 *
 * Stage 0 is the registered primary inputs, so s ranges over
 * [0, depth): rows are stage s's output nets, columns the input pins of
 * stage s+1's nodes in declaration order.
 */
inline crossbar_config map_boundary( pipelined_network const& p, std::size_t s )
{
  if ( s >= p.depth() )
  {
    throw tlg_error( "boundary index " + std::to_string( s ) + " out of range" );
  }
  crossbar_config cfg;
  std::unordered_map<std::string, std::size_t> row_of;
  if ( s == 0 )
  {
    cfg.rows = p.primary_inputs;
  }
  else
  {
    for ( auto const& node : p.stages[s - 1] )
      cfg.rows.push_back( node.output );
  }
  for ( std::size_t r = 0; r < cfg.rows.size(); ++r )
    row_of[cfg.rows[r]] = r;

  std::vector<std::size_t> sources;
  for ( auto const& node : p.stages[s] )
  {
    for ( std::size_t pin = 0; pin < node.inputs.size(); ++pin )
    {
      auto const it = row_of.find( node.inputs[pin] );
      if ( it == row_of.end() )
      {
        throw tlg_error( "pin source '" + node.inputs[pin] + "' not produced by stage " + std::to_string( s ) );
      }
      cfg.cols.push_back( node.output + "." + std::to_string( pin ) );
      sources.push_back( it->second );
    }
  }
  cfg.cells.assign( cfg.rows.size(), std::vector<bool>( cfg.cols.size(), false ) );
  for ( std::size_t c = 0; c < sources.size(); ++c )
    cfg.cells[sources[c]][c] = true;
  return cfg;
}

struct fanout_record
{
  std::map<std::string, std::size_t> per_net;
  std::size_t total{ 0 };
};

/*! \brief Per-net consumer-pin counts; the total equals the sum of
 *         fan-ins over all stages, which is also the total ON cell
 *         count across all boundary crossbars. */
inline fanout_record fanout_profile( pipelined_network const& p )
{
  fanout_record r;
  for ( auto const& stage : p.stages )
  {
    for ( auto const& node : stage )
    {
      for ( auto const& in : node.inputs )
      {
        ++r.per_net[in];
        ++r.total;
      }
    }
  }
  return r;
}

/*! \brief Coarse upper bound on off-state crossbar leakage:
 *         off_cells * swing^2 / r_off. */
inline double leakage_estimate( crossbar_config const& cfg )
{
  return static_cast<double>( cfg.off_count() ) * cfg.swing * cfg.swing / cfg.r_off;
}

/*! \brief Row-major bitstream, MSB-first within bytes, each row padded
 *         to a byte boundary. */
inline std::vector<std::uint8_t> crossbar_bitstream( crossbar_config const& cfg )
{
  std::vector<std::uint8_t> bytes;
  for ( auto const& row : cfg.cells )
  {
    std::uint8_t cur = 0;
    unsigned nbits = 0;
    for ( auto const bit : row )
    {
      cur = static_cast<std::uint8_t>( ( cur << 1 ) | ( bit ? 1 : 0 ) );
      if ( ++nbits == 8 )
      {
        bytes.push_back( cur );
        cur = 0;
        nbits = 0;
      }
    }
    if ( nbits > 0 )
    {
      bytes.push_back( static_cast<std::uint8_t>( cur << ( 8 - nbits ) ) );
    }
  }
  return bytes;
}

} // namespace drtl
