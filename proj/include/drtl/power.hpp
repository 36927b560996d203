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
  \file power.hpp
  \brief Energy/delay/EDP model and comparison against published LUT
         baseline rows
*/

#pragma once

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "interconnect.hpp"

namespace drtl
{

class power_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct energy_model
{
  double e_gate_fj{ 0.3 };   /* per gate evaluation */
  double e_fanout_fj{ 0.2 }; /* per driven crossbar pin */
  double clock_period_ns{ 0.5 };
};

struct energy_report
{
  std::size_t gate_count;
  std::size_t total_fanout;
  double energy_per_cycle_fj;
  double throughput_period_ns;
  double latency_ns;
  double edp_fj_ns;
  double avg_energy_per_gate_fj;
};

/*! \brief Linear energy model: gates * e_gate + fanout * e_fanout per
 *         cycle; EDP uses the throughput period. */
inline energy_report estimate( pipelined_network const& p, energy_model const& model = {} )
{
  auto const gates = p.node_count();
  if ( gates == 0 )
  {
    throw power_error( "cannot estimate an empty network" );
  }
  auto const fanout = fanout_profile( p ).total;
  energy_report r;
  r.gate_count = gates;
  r.total_fanout = fanout;
  r.energy_per_cycle_fj = static_cast<double>( gates ) * model.e_gate_fj +
                          static_cast<double>( fanout ) * model.e_fanout_fj;
  r.throughput_period_ns = model.clock_period_ns;
  r.latency_ns = static_cast<double>( p.depth() ) * model.clock_period_ns;
  r.edp_fj_ns = r.energy_per_cycle_fj * r.throughput_period_ns;
  r.avg_energy_per_gate_fj = r.energy_per_cycle_fj / static_cast<double>( gates );
  return r;
}

/*! \brief One published comparison row: LUT and RTL delay/energy plus
 *         the printed % reduction columns. */
struct baseline_row
{
  std::string name;
  unsigned n_inputs;
  unsigned n_outputs;
  double lut_delay_ns;
  double rtl_delay_ns;
  double lut_energy_fj;
  double rtl_energy_fj;
  double stated_energy_red_pct;
  double stated_edp_red_pct;
};

struct comparison_record
{
  double energy_reduction_pct;
  double edp_reduction_pct;
  bool energy_mismatch; /* recomputed value disagrees with the printed one */
  bool edp_mismatch;
};

/* tolerance (percentage points) for agreeing with a printed value */
inline constexpr double energy_pct_tolerance = 0.05;
inline constexpr double edp_pct_tolerance = 0.01;

/*! \brief Recomputes the % reduction columns from raw energy/delay and
 *         flags rows whose printed value disagrees. */
inline comparison_record compare_to_baseline( double rtl_energy_fj, double rtl_delay_ns, baseline_row const& row )
{
  if ( row.lut_energy_fj <= 0.0 )
  {
    throw power_error( "row '" + row.name + "': zero baseline energy" );
  }
  comparison_record c;
  c.energy_reduction_pct = 100.0 * ( 1.0 - rtl_energy_fj / row.lut_energy_fj );
  c.edp_reduction_pct =
      100.0 * ( 1.0 - ( rtl_energy_fj * rtl_delay_ns ) / ( row.lut_energy_fj * row.lut_delay_ns ) );
  c.energy_mismatch = std::abs( c.energy_reduction_pct - row.stated_energy_red_pct ) > energy_pct_tolerance;
  c.edp_mismatch = std::abs( c.edp_reduction_pct - row.stated_edp_red_pct ) > edp_pct_tolerance;
  return c;
}

/*! \brief Comparison using the row's own RTL columns. */
inline comparison_record compare_to_baseline( baseline_row const& row )
{
  return compare_to_baseline( row.rtl_energy_fj, row.rtl_delay_ns, row );
}

/*! \brief Comparison of a computed report against a published row. */
inline comparison_record compare_to_baseline( energy_report const& report, baseline_row const& row )
{
  return compare_to_baseline( report.energy_per_cycle_fj, report.throughput_period_ns, row );
}

/*! \brief Loads baseline rows from CSV:
 *         name,n_inputs,n_outputs,lut_delay_ns,rtl_delay_ns,
 *         lut_energy_fj,rtl_energy_fj,stated_energy_red_pct,stated_edp_red_pct */
inline std::vector<baseline_row> load_baseline( std::istream& is )
{
  std::vector<baseline_row> rows;
  std::string line;
  unsigned lineno = 0;
  while ( std::getline( is, line ) )
  {
    ++lineno;
    if ( !line.empty() && line.back() == '\r' )
      line.pop_back();
    if ( line.empty() || line[0] == '#' )
      continue;
    if ( lineno == 1 && line.rfind( "name,", 0 ) == 0 )
      continue; /* header */
    std::vector<std::string> fields;
    std::istringstream ls( line );
    std::string field;
    while ( std::getline( ls, field, ',' ) )
      fields.push_back( field );
    if ( fields.size() != 9 )
    {
      throw power_error( "line " + std::to_string( lineno ) + ": expected 9 fields, got " +
                         std::to_string( fields.size() ) );
    }
    baseline_row r;
    try
    {
      r.name = fields[0];
      r.n_inputs = static_cast<unsigned>( std::stoul( fields[1] ) );
      r.n_outputs = static_cast<unsigned>( std::stoul( fields[2] ) );
      r.lut_delay_ns = std::stod( fields[3] );
      r.rtl_delay_ns = std::stod( fields[4] );
      r.lut_energy_fj = std::stod( fields[5] );
      r.rtl_energy_fj = std::stod( fields[6] );
      r.stated_energy_red_pct = std::stod( fields[7] );
      r.stated_edp_red_pct = std::stod( fields[8] );
    }
    catch ( std::exception const& )
    {
      throw power_error( "line " + std::to_string( lineno ) + ": malformed numeric field" );
    }
    if ( r.lut_delay_ns <= 0 || r.rtl_delay_ns <= 0 || r.lut_energy_fj <= 0 || r.rtl_energy_fj <= 0 )
    {
      throw power_error( "line " + std::to_string( lineno ) + ": non-positive delay or energy" );
    }
    for ( auto const& prev : rows )
    {
      if ( prev.name == r.name )
      {
        throw power_error( "duplicate baseline row '" + r.name + "'" );
      }
    }
    rows.push_back( r );
  }
  return rows;
}

inline std::vector<baseline_row> load_baseline_string( std::string const& text )
{
  std::istringstream is( text );
  return load_baseline( is );
}

/*! \brief The published comparison table bundled as data. */
inline std::string builtin_baseline_csv()
{
  return "name,n_inputs,n_outputs,lut_delay_ns,rtl_delay_ns,lut_energy_fj,rtl_energy_fj,"
         "stated_energy_red_pct,stated_edp_red_pct\n"
         "c432,36,7,10.1,0.5,17362.56,480,97.2,99.86\n"
         "c499,41,32,8.18,0.5,33795.57,940,94.5,99.83\n"
         "c880,60,26,8.4,0.5,26394.41,970,96.3,99.78\n"
         "c1355,41,32,9.95,0.5,56284.24,1480,97.4,99.87\n"
         "c1908,33,25,11.55,0.5,56930.13,1200,97.89,99.91\n";
}

} // namespace drtl
