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
  \file tlg.hpp
  \brief Threshold gate semantics, weight quantization, differential
         conductance mapping and variation Monte Carlo
*/

#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace drtl
{

class tlg_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Threshold gate: fires iff sum(w_i * x_i) + bias > 0.
 *
 * Weights are signed integers, the bias a signed half-integer
 * (k + 0.5).  With integer weights the weighted sum is always an
 * integer, so the comparison can never tie.
 */
struct threshold_gate
{
  std::vector<int> weights;
  double bias; /* half-integer: 2*bias is an odd integer */
};

inline bool is_half_integer( double b )
{
  double const twice = 2.0 * b;
  return twice == std::round( twice ) && std::fmod( std::abs( twice ), 2.0 ) == 1.0;
}

/*! \brief Fan-in limit plus allowed weight magnitudes and bias levels.
 *
 * The default 2-input scheme uses weights in {-1, +1}, biases in
 * {-1.5, -0.5, +0.5, +1.5}, and requires 25% comparator resolution.
 */
struct quantization_scheme
{
  unsigned fanin_limit{ 2 };
  std::set<int> weight_magnitudes{ 1 };
  std::set<double> bias_levels{ -1.5, -0.5, 0.5, 1.5 };
  double required_resolution{ 0.25 };

  /*! \brief Scheme for a given fan-in limit: unit weights, bias levels
   *         +/-0.5 ... +/-(limit - 0.5). */
  static quantization_scheme default_for( unsigned limit )
  {
    quantization_scheme s;
    s.fanin_limit = limit;
    s.bias_levels.clear();
    for ( unsigned k = 0; k < limit; ++k )
    {
      s.bias_levels.insert( k + 0.5 );
      s.bias_levels.insert( -( k + 0.5 ) );
    }
    s.required_resolution = limit == 2 ? 0.25 : 0.0;
    return s;
  }
};

inline void validate( threshold_gate const& g )
{
  if ( g.weights.empty() )
  {
    throw tlg_error( "threshold gate needs at least one weight" );
  }
  if ( !is_half_integer( g.bias ) )
  {
    throw tlg_error( "bias " + std::to_string( g.bias ) + " is not a half-integer" );
  }
}

inline bool conforms( threshold_gate const& g, quantization_scheme const& s )
{
  if ( g.weights.empty() || g.weights.size() > s.fanin_limit )
    return false;
  if ( !is_half_integer( g.bias ) || !s.bias_levels.count( g.bias ) )
    return false;
  for ( auto const w : g.weights )
  {
    if ( !s.weight_magnitudes.count( std::abs( w ) ) )
      return false;
  }
  return true;
}

/*! \brief Behavioral evaluation: 1 iff sum(w_i x_i) + bias > 0. */
inline bool evaluate( threshold_gate const& g, std::vector<bool> const& inputs )
{
  if ( inputs.size() != g.weights.size() )
  {
    throw tlg_error( "expected " + std::to_string( g.weights.size() ) + " inputs, got " +
                     std::to_string( inputs.size() ) );
  }
  double sum = g.bias;
  for ( std::size_t i = 0; i < inputs.size(); ++i )
  {
    if ( inputs[i] )
      sum += g.weights[i];
  }
  return sum > 0.0;
}

struct margin_record
{
  double min_margin;  /* min over input vectors of |sum + bias| */
  double sum_spread;  /* max sum - min sum */
  double resolution;  /* min_margin / sum_spread */
};

/*! \brief Enumerates all 2^n input vectors and measures how far the
 *         weighted sum ever gets from the decision point, relative to
 *         its full spread.  The default 2-input library bottoms out at
 *         exactly 0.25. */
inline margin_record margin_analysis( threshold_gate const& g )
{
  validate( g );
  bool all_zero = true;
  for ( auto const w : g.weights )
    all_zero &= w == 0;
  if ( all_zero )
  {
    throw tlg_error( "degenerate gate: all weights zero" );
  }
  auto const n = g.weights.size();
  double min_abs = std::numeric_limits<double>::infinity();
  double min_sum = std::numeric_limits<double>::infinity();
  double max_sum = -std::numeric_limits<double>::infinity();
  for ( std::uint64_t x = 0; x < ( std::uint64_t( 1 ) << n ); ++x )
  {
    double sum = g.bias;
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( ( x >> i ) & 1 )
        sum += g.weights[i];
    }
    min_abs = std::min( min_abs, std::abs( sum ) );
    min_sum = std::min( min_sum, sum );
    max_sum = std::max( max_sum, sum );
  }
  return { min_abs, max_sum - min_sum, min_abs / ( max_sum - min_sum ) };
}

/*! \brief Resistive device preset: conductance of a fully-ON unit
 *         element, conductance of an OFF element, and the number of
 *         programmable levels. */
struct device_model
{
  std::string name;
  double g_unit; /* siemens per unit weight */
  double g_off;  /* siemens of an OFF element */
  unsigned levels;

  double on_off_ratio() const
  {
    return g_off > 0.0 ? g_unit / g_off : std::numeric_limits<double>::infinity();
  }

  static device_model ideal() { return { "ideal", 10e-6, 0.0, 4 }; }
  static device_model mtj( double ratio ) /* binary spin-torque cell, ON/OFF ~3-4 */
  {
    return { "mtj" + std::to_string( static_cast<int>( ratio ) ), 10e-6, 10e-6 / ratio, 2 };
  }
  static device_model domain_wall() { return { "domain_wall", 10e-6, 1e-6, 4 }; }
  static device_model ag_si() /* 200 ohm ON, 10 Mohm OFF */
  {
    return { "ag_si", 1.0 / 200.0, 1.0 / 10e6, 2 };
  }
};

inline void validate( device_model const& d )
{
  if ( !( d.g_unit > d.g_off ) || d.g_off < 0.0 )
  {
    throw tlg_error( "device '" + d.name + "': requires g_unit > g_off >= 0" );
  }
  if ( d.levels < 2 )
  {
    throw tlg_error( "device '" + d.name + "': needs at least 2 levels" );
  }
}

/*! \brief Differential conductance pair per branch; the bias rides on a
 *         branch whose input transistor is tied to the supply. */
struct conductance_branch
{
  double g_plus;
  double g_minus;
};

struct conductance_realization
{
  std::vector<conductance_branch> input_branches;
  conductance_branch bias_branch;
};

/*! \brief Programs the differential pairs so that g_plus - g_minus equals
 *         weight * (g_unit - g_off) with the weight's sign; the unused
 *         side of each pair sits at g_off. */
inline conductance_realization to_conductances( threshold_gate const& g, device_model const& d )
{
  validate( g );
  validate( d );
  auto const span = d.g_unit - d.g_off;
  auto program = [&]( double magnitude, bool positive ) -> conductance_branch {
    double const on = d.g_off + magnitude * span;
    return positive ? conductance_branch{ on, d.g_off } : conductance_branch{ d.g_off, on };
  };
  conductance_realization r;
  for ( auto const w : g.weights )
  {
    if ( static_cast<unsigned>( std::abs( w ) ) > d.levels - 1 )
    {
      throw tlg_error( "weight " + std::to_string( w ) + " not representable with " +
                       std::to_string( d.levels ) + " levels" );
    }
    r.input_branches.push_back( program( std::abs( w ), w > 0 ) );
  }
  /* half-integer bias magnitudes use a half-unit conductance step */
  if ( std::abs( g.bias ) > d.levels - 0.5 )
  {
    throw tlg_error( "bias " + std::to_string( g.bias ) + " not representable with " +
                     std::to_string( d.levels ) + " levels" );
  }
  r.bias_branch = program( std::abs( g.bias ), g.bias > 0 );
  return r;
}

/*! \brief Latch decision: compares total conductance of the two
 *         pull-down paths over the active branches.  The bias branch is
 *         always active. */
inline bool latch_evaluate( conductance_realization const& r, std::vector<bool> const& inputs )
{
  if ( inputs.size() != r.input_branches.size() )
  {
    throw tlg_error( "arity mismatch in latch_evaluate" );
  }
  double p = r.bias_branch.g_plus;
  double m = r.bias_branch.g_minus;
  for ( std::size_t i = 0; i < inputs.size(); ++i )
  {
    if ( inputs[i] )
    {
      p += r.input_branches[i].g_plus;
      m += r.input_branches[i].g_minus;
    }
  }
  if ( p == m )
  {
    throw tlg_error( "latch tie: invalid realization" );
  }
  return p > m;
}

/*! \brief Largest relative conductance deviation the latch tolerates.
 *
 * Scaling all same-side branches by (1 - delta) and the opposite side
 * by (1 + delta) flips the decision first at delta = |P - M| / (P + M),
 * so the bound is the minimum of that ratio over all input vectors.
 */
inline double max_safe_relative_deviation( threshold_gate const& g, device_model const& d )
{
  auto const r = to_conductances( g, d );
  auto const n = g.weights.size();
  double worst = std::numeric_limits<double>::infinity();
  for ( std::uint64_t x = 0; x < ( std::uint64_t( 1 ) << n ); ++x )
  {
    double p = r.bias_branch.g_plus;
    double m = r.bias_branch.g_minus;
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( ( x >> i ) & 1 )
      {
        p += r.input_branches[i].g_plus;
        m += r.input_branches[i].g_minus;
      }
    }
    worst = std::min( worst, std::abs( p - m ) / ( p + m ) );
  }
  return worst;
}

namespace detail
{

inline conductance_branch perturb( conductance_branch b, std::mt19937_64& rng, double sigma )
{
  std::normal_distribution<double> dist( 1.0, sigma );
  auto factor = [&]() { return std::max( 0.0, dist( rng ) ); };
  return { b.g_plus * factor(), b.g_minus * factor() };
}

} // namespace detail

/*! \brief Fraction of trials in which a multiplicative Gaussian
 *         perturbation of every branch conductance (mean 1, std sigma,
 *         truncated at 0) makes the latch disagree with the behavioral
 *         gate on at least one input vector. */
inline double monte_carlo_failure_rate( threshold_gate const& g, device_model const& d, double sigma,
                                        std::uint64_t trials, std::uint64_t seed )
{
  if ( trials < 1 )
  {
    throw tlg_error( "trials must be >= 1" );
  }
  if ( sigma < 0.0 )
  {
    throw tlg_error( "sigma must be >= 0" );
  }
  auto const nominal = to_conductances( g, d );
  auto const n = g.weights.size();
  std::vector<bool> expected;
  std::vector<bool> x( n );
  for ( std::uint64_t v = 0; v < ( std::uint64_t( 1 ) << n ); ++v )
  {
    for ( std::size_t i = 0; i < n; ++i )
      x[i] = ( v >> i ) & 1;
    expected.push_back( evaluate( g, x ) );
  }

  std::mt19937_64 rng( seed );
  std::uint64_t failures = 0;
  for ( std::uint64_t t = 0; t < trials; ++t )
  {
    conductance_realization r;
    for ( auto const& b : nominal.input_branches )
      r.input_branches.push_back( detail::perturb( b, rng, sigma ) );
    r.bias_branch = detail::perturb( nominal.bias_branch, rng, sigma );
    for ( std::uint64_t v = 0; v < ( std::uint64_t( 1 ) << n ); ++v )
    {
      double p = r.bias_branch.g_plus;
      double m = r.bias_branch.g_minus;
      for ( std::size_t i = 0; i < n; ++i )
      {
        if ( ( v >> i ) & 1 )
        {
          p += r.input_branches[i].g_plus;
          m += r.input_branches[i].g_minus;
        }
      }
      if ( ( p > m ) != expected[v] )
      {
        ++failures;
        break;
      }
    }
  }
  return static_cast<double>( failures ) / static_cast<double>( trials );
}

/*! \brief Parses a conductance or resistance literal.
 *
 * Accepts siemens with optional u/µ/m prefix ("10uS", "5mS", "2e-6S")
 * and resistances ("200ohm", "10Mohm", "1kohm"), converted to siemens.
 */
inline double parse_conductance( std::string const& text )
{
  std::size_t pos = 0;
  double value;
  try
  {
    value = std::stod( text, &pos );
  }
  catch ( std::exception const& )
  {
    throw tlg_error( "cannot parse conductance '" + text + "'" );
  }
  std::string unit = text.substr( pos );
  while ( !unit.empty() && std::isspace( static_cast<unsigned char>( unit.front() ) ) )
    unit.erase( unit.begin() );
  if ( unit.empty() || unit == "S" )
    return value;
  if ( unit == "uS" || unit == "µS" )
    return value * 1e-6;
  if ( unit == "mS" )
    return value * 1e-3;
  auto resistance = [&]( double scale ) {
    if ( value == 0.0 )
      throw tlg_error( "zero resistance in '" + text + "'" );
    return 1.0 / ( value * scale );
  };
  if ( unit == "ohm" || unit == "Ohm" )
    return resistance( 1.0 );
  if ( unit == "kohm" )
    return resistance( 1e3 );
  if ( unit == "Mohm" )
    return resistance( 1e6 );
  throw tlg_error( "unknown unit '" + unit + "' in '" + text + "'" );
}

/*! \brief Loads device presets from key/value text.
 *
 * Blocks of `name=...`, `g_unit=...`, `g_off=...` or `on_off_ratio=...`,
 * `levels=...`; a new `name` line starts the next preset, `#` comments.
 */
inline std::vector<device_model> parse_device_config( std::istream& is )
{
  std::vector<device_model> out;
  device_model cur{};
  bool open = false;
  bool have_off = false;
  double ratio = 0.0;
  auto finish = [&]() {
    if ( !open )
      return;
    if ( !have_off )
    {
      if ( ratio <= 0.0 )
        throw tlg_error( "device '" + cur.name + "': needs g_off or on_off_ratio" );
      cur.g_off = cur.g_unit / ratio;
    }
    validate( cur );
    out.push_back( cur );
    cur = {};
    open = have_off = false;
    ratio = 0.0;
  };
  std::string line;
  while ( std::getline( is, line ) )
  {
    if ( auto const hash = line.find( '#' ); hash != std::string::npos )
      line.erase( hash );
    auto const eq = line.find( '=' );
    if ( eq == std::string::npos )
      continue;
    auto trim = []( std::string s ) {
      auto const b = s.find_first_not_of( " \t\r" );
      auto const e = s.find_last_not_of( " \t\r" );
      return b == std::string::npos ? std::string{} : s.substr( b, e - b + 1 );
    };
    auto const key = trim( line.substr( 0, eq ) );
    auto const val = trim( line.substr( eq + 1 ) );
    if ( key == "name" )
    {
      finish();
      cur.name = val;
      cur.levels = 2;
      open = true;
    }
    else if ( key == "g_unit" )
      cur.g_unit = parse_conductance( val );
    else if ( key == "g_off" )
    {
      cur.g_off = parse_conductance( val );
      have_off = true;
    }
    else if ( key == "on_off_ratio" )
      ratio = std::stod( val );
    else if ( key == "levels" )
      cur.levels = static_cast<unsigned>( std::stoul( val ) );
    else
      throw tlg_error( "unknown device config key '" + key + "'" );
  }
  finish();
  return out;
}

} // namespace drtl
