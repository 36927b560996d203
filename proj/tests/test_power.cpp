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

#include <doctest.h>

#include <drtl/power.hpp>

#include "test_util.hpp"

using namespace drtl;

namespace
{

pipelined_network pipe_of( bool_network const& net )
{
  return levelize( synthesize( decompose_fanin( net, 2 ), {} ) );
}

} // namespace

TEST_CASE( "energy estimate arithmetic" )
{
  SUBCASE( "1 gate, 1 fan-out" )
  {
    auto const p = pipe_of( parse_bench( "INPUT(a)\nOUTPUT(f)\nf = NOT(a)\n" ) );
    auto const r = estimate( p );
    CHECK( r.gate_count == 1 );
    CHECK( r.total_fanout == 1 );
    CHECK( r.energy_per_cycle_fj == doctest::Approx( 0.5 ) );
    CHECK( r.avg_energy_per_gate_fj == doctest::Approx( 0.5 ) );
    CHECK( r.edp_fj_ns == doctest::Approx( 0.25 ) );
  }
  SUBCASE( "100 gates and 150 fan-outs give 60 fJ per cycle" )
  {
    /* the invariant is linear, check it on the raw formula */
    energy_model const m;
    CHECK( 100 * m.e_gate_fj + 150 * m.e_fanout_fj == doctest::Approx( 60.0 ) );
  }
  SUBCASE( "linearity: doubling counts doubles the energy" )
  {
    for ( std::uint64_t seed = 0; seed < 3; ++seed )
    {
      auto const p = pipe_of( drtl::testing::random_network( seed, 8, 40 ) );
      auto const r = estimate( p );
      CHECK( r.energy_per_cycle_fj ==
             doctest::Approx( r.gate_count * 0.3 + r.total_fanout * 0.2 ) );
      CHECK( 2 * r.gate_count * 0.3 + 2 * r.total_fanout * 0.2 ==
             doctest::Approx( 2.0 * r.energy_per_cycle_fj ) );
    }
  }
  SUBCASE( "identity: avg energy per gate is 0.3 + 0.2 * avg fan-out" )
  {
    for ( std::uint64_t seed = 0; seed < 5; ++seed )
    {
      auto const p = pipe_of( drtl::testing::random_network( seed, 8, 40 ) );
      auto const r = estimate( p );
      double const avg_fanout = static_cast<double>( r.total_fanout ) / static_cast<double>( r.gate_count );
      CHECK( r.avg_energy_per_gate_fj == doctest::Approx( 0.3 + 0.2 * avg_fanout ).epsilon( 1e-12 ) );
    }
  }
  SUBCASE( "empty network rejected" )
  {
    pipelined_network p;
    CHECK_THROWS_AS( estimate( p ), power_error );
  }
}

TEST_CASE( "baseline table regression" )
{
  auto const rows = load_baseline_string( builtin_baseline_csv() );
  REQUIRE( rows.size() == 5 );

  auto row = [&]( std::string const& name ) -> baseline_row const& {
    for ( auto const& r : rows )
      if ( r.name == name )
        return r;
    FAIL( "missing row" );
    return rows[0];
  };

  SUBCASE( "c432 recomputes to the printed values" )
  {
    auto const c = compare_to_baseline( row( "c432" ) );
    CHECK( c.energy_reduction_pct == doctest::Approx( 97.235 ).epsilon( 1e-3 ) );
    CHECK( c.edp_reduction_pct == doctest::Approx( 99.863 ).epsilon( 1e-3 ) );
    CHECK_FALSE( c.energy_mismatch );
    CHECK_FALSE( c.edp_mismatch );
  }
  SUBCASE( "c1908 recomputes to the printed values" )
  {
    auto const c = compare_to_baseline( row( "c1908" ) );
    CHECK( c.energy_reduction_pct == doctest::Approx( 97.892 ).epsilon( 1e-3 ) );
    CHECK( c.edp_reduction_pct == doctest::Approx( 99.909 ).epsilon( 1e-3 ) );
    CHECK_FALSE( c.energy_mismatch );
    CHECK_FALSE( c.edp_mismatch );
  }
  SUBCASE( "c499 energy column is internally inconsistent and flagged" )
  {
    auto const c = compare_to_baseline( row( "c499" ) );
    CHECK( c.energy_reduction_pct == doctest::Approx( 97.22 ).epsilon( 1e-3 ) );
    CHECK( c.energy_mismatch ); /* printed 94.5 */
    CHECK( c.edp_reduction_pct == doctest::Approx( 99.830 ).epsilon( 1e-3 ) );
    CHECK_FALSE( c.edp_mismatch );
  }
}

TEST_CASE( "baseline CSV loading" )
{
  SUBCASE( "empty file gives an empty list" )
  {
    CHECK( load_baseline_string( "" ).empty() );
  }
  SUBCASE( "malformed row rejected" )
  {
    CHECK_THROWS_AS( load_baseline_string( "c1,1,1,1,1\n" ), power_error );
    CHECK_THROWS_AS( load_baseline_string( "c1,1,1,1,0.5,abc,480,97,99\n" ), power_error );
  }
  SUBCASE( "negative energy rejected" )
  {
    CHECK_THROWS_AS( load_baseline_string( "c1,1,1,10,0.5,-100,480,97,99\n" ), power_error );
  }
  SUBCASE( "duplicate name rejected" )
  {
    CHECK_THROWS_AS( load_baseline_string( "c1,1,1,10,0.5,100,48,52,97.6\n"
                                           "c1,1,1,10,0.5,100,48,52,97.6\n" ),
                     power_error );
  }
  SUBCASE( "zero baseline energy rejected at comparison" )
  {
    baseline_row r{ "x", 1, 1, 1.0, 0.5, 0.0, 1.0, 0.0, 0.0 };
    CHECK_THROWS_AS( compare_to_baseline( r ), power_error );
  }
}

TEST_CASE( "computed reports substitute for the published RTL columns" )
{
  auto const rows = load_baseline_string( builtin_baseline_csv() );
  auto const p = pipe_of( drtl::testing::random_network( 1, 8, 40 ) );
  auto const report = estimate( p );
  auto const c = compare_to_baseline( report, rows[0] );
  double const expect = 100.0 * ( 1.0 - report.energy_per_cycle_fj / rows[0].lut_energy_fj );
  CHECK( c.energy_reduction_pct == doctest::Approx( expect ) );
}
