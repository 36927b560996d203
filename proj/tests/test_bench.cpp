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

#include <drtl/bench.hpp>

#include "test_util.hpp"

using namespace drtl;

namespace
{

std::string const full_adder = "INPUT(a)\n"
                               "INPUT(b)\n"
                               "INPUT(cin)\n"
                               "OUTPUT(sum)\n"
                               "OUTPUT(cout)\n"
                               "s1 = XOR(a, b)\n"
                               "sum = XOR(s1, cin)\n"
                               "c1 = AND(a, b)\n"
                               "c2 = AND(s1, cin)\n"
                               "cout = OR(c1, c2)\n";

} // namespace

TEST_CASE( "minimal well-formed file" )
{
  auto const net = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(f)\nf = AND(a, b)" );
  CHECK( net.primary_inputs.size() == 2 );
  CHECK( net.primary_outputs.size() == 1 );
  REQUIRE( net.gates.size() == 1 );
  CHECK( net.gates[0].kind == gate_kind::AND );
}

TEST_CASE( "comments, blank lines, case-insensitive keywords, BUFF alias" )
{
  auto const net = parse_bench( "# header comment\n"
                                "INPUT(A)\n\n"
                                "input(b)\n"
                                "OUTPUT(f)\n"
                                "OUTPUT(g)\n"
                                "f = and(A, b)  # trailing comment\n"
                                "g = BUFF(A)\n" );
  CHECK( net.gates.size() == 2 );
  CHECK( net.gates[1].kind == gate_kind::BUF );
  /* identifiers stay case-sensitive */
  CHECK( net.primary_inputs[0] == "A" );
}

TEST_CASE( "parse errors reject the whole file" )
{
  CHECK_THROWS_AS( parse_bench( "INPUT(a)\nOUTPUT(f)\nf = AND(a, a)\nf = OR(a, a)\n" ), network_error );
  CHECK_THROWS_AS( parse_bench( "INPUT(a)\nOUTPUT(f)\nf = AND(a, b)\n" ), network_error );  /* undriven */
  CHECK_THROWS_AS( parse_bench( "INPUT(a)\nOUTPUT(f)\nf = FOO(a, a)\n" ), parse_error );
  CHECK_THROWS_AS( parse_bench( "INPUT(a)\nOUTPUT(f)\nf = NOT(a, a)\n" ), network_error ); /* arity */
  CHECK_THROWS_AS( parse_bench( "INPUT(a)\na = AND(a, a)\n" ), parse_error ); /* INPUT redefinition */
  CHECK_THROWS_AS( parse_bench( "INPUT(a)\nOUTPUT(f)\nf = AND(g, a)\ng = OR(f, a)\n" ), network_error );
  CHECK_THROWS_AS( parse_bench( "INPUT(a)\nOUTPUT(f)\nf = AND(a a)\n" ), parse_error );
}

TEST_CASE( "syntax errors carry line and column" )
{
  try
  {
    parse_bench( "INPUT(a)\nf = AND(a,\n" );
    FAIL( "expected parse_error" );
  }
  catch ( parse_error const& e )
  {
    CHECK( e.line == 2 );
    CHECK( e.column > 0 );
  }
}

TEST_CASE( "topological order respects edges, ties by declaration" )
{
  SUBCASE( "single gate" )
  {
    auto const net = parse_bench( "INPUT(a)\nOUTPUT(f)\nf = NOT(a)\n" );
    CHECK( topological_order( net ) == std::vector<std::size_t>{ 0 } );
  }
  SUBCASE( "chain" )
  {
    auto const net = parse_bench( "INPUT(a)\nOUTPUT(g2)\ng1 = NOT(a)\ng2 = NOT(g1)\n" );
    CHECK( topological_order( net ) == std::vector<std::size_t>{ 0, 1 } );
  }
  SUBCASE( "diamond: parallel gates in declaration order, then the join" )
  {
    auto const net = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(j)\n"
                                  "p2 = OR(a, b)\np1 = AND(a, b)\nj = AND(p1, p2)\n" );
    auto const order = topological_order( net );
    CHECK( order == std::vector<std::size_t>{ 0, 1, 2 } );
  }
  SUBCASE( "brute-force edge scan on random networks" )
  {
    for ( std::uint64_t seed = 0; seed < 10; ++seed )
    {
      auto const net = drtl::testing::random_network( seed, 5, 40 );
      auto const order = topological_order( net );
      REQUIRE( order.size() == net.gates.size() );
      std::unordered_map<std::string, std::size_t> pos;
      for ( std::size_t i = 0; i < order.size(); ++i )
        pos[net.gates[order[i]].output] = i;
      for ( std::size_t i = 0; i < order.size(); ++i )
      {
        for ( auto const& in : net.gates[order[i]].inputs )
        {
          if ( auto const it = pos.find( in ); it != pos.end() )
          {
            CHECK( it->second < i );
          }
        }
      }
    }
  }
}

TEST_CASE( "reference evaluation" )
{
  auto const and_net = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(f)\nf = AND(a, b)" );
  CHECK( eval_reference( and_net, std::vector<bool>{ true, true } ) == std::vector<bool>{ true } );
  CHECK( eval_reference( and_net, std::vector<bool>{ true, false } ) == std::vector<bool>{ false } );

  auto const xor_net = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(f)\nf = XOR(a, b)" );
  CHECK( eval_reference( xor_net, std::vector<bool>{ true, true } ) == std::vector<bool>{ false } );

  CHECK_THROWS_AS( eval_reference( and_net, std::vector<bool>{ true } ), network_error );
  CHECK_THROWS_AS( eval_reference( and_net, { { "a", true }, { "b", true }, { "c", true } } ), network_error );
}

TEST_CASE( "full adder matches arithmetic truth table" )
{
  auto const net = parse_bench( full_adder );
  for ( unsigned v = 0; v < 8; ++v )
  {
    unsigned const a = v & 1, b = ( v >> 1 ) & 1, cin = ( v >> 2 ) & 1;
    unsigned const total = a + b + cin;
    auto const out = eval_reference( net, std::vector<bool>{ a != 0, b != 0, cin != 0 } );
    CHECK( out[0] == ( ( total & 1 ) != 0 ) );
    CHECK( out[1] == ( total >= 2 ) );
  }
}

TEST_CASE( "compiled evaluator agrees with eval_reference" )
{
  for ( std::uint64_t seed = 0; seed < 5; ++seed )
  {
    auto const net = drtl::testing::random_network( seed, 6, 30 );
    reference_evaluator fast( net );
    for ( std::uint64_t v = 0; v < 64; ++v )
    {
      auto const bits = drtl::testing::bits_of( v, 6 );
      CHECK( fast( bits ) == eval_reference( net, bits ) );
    }
  }
}

TEST_CASE( "network statistics" )
{
  SUBCASE( "single AND" )
  {
    auto const s = network_stats( parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(f)\nf = AND(a, b)" ) );
    CHECK( s.gates_by_kind.at( "AND" ) == 1 );
    CHECK( s.depth == 1 );
    CHECK( s.max_fanin == 2 );
  }
  SUBCASE( "pass-through output has depth 0" )
  {
    auto const s = network_stats( parse_bench( "INPUT(a)\nOUTPUT(a)\n" ) );
    CHECK( s.depth == 0 );
    CHECK( s.num_gates == 0 );
  }
  SUBCASE( "depth equals brute-force longest path" )
  {
    for ( std::uint64_t seed = 0; seed < 5; ++seed )
    {
      auto const net = drtl::testing::random_network( seed, 5, 50 );
      /* brute-force: relax edges |gates| times */
      std::unordered_map<std::string, std::size_t> lvl;
      for ( auto const& pi : net.primary_inputs )
        lvl[pi] = 0;
      for ( std::size_t pass = 0; pass <= net.gates.size(); ++pass )
      {
        for ( auto const& g : net.gates )
        {
          std::size_t m = 0;
          bool all = true;
          for ( auto const& in : g.inputs )
          {
            if ( !lvl.count( in ) )
            {
              all = false;
              break;
            }
            m = std::max( m, lvl.at( in ) );
          }
          if ( all )
            lvl[g.output] = m + 1;
        }
      }
      std::size_t expect = 0;
      for ( auto const& po : net.primary_outputs )
        expect = std::max( expect, lvl.at( po ) );
      CHECK( network_stats( net ).depth == expect );
    }
  }
}

TEST_CASE( "serialize/parse round-trip preserves structure" )
{
  for ( std::uint64_t seed = 0; seed < 10; ++seed )
  {
    auto const net = drtl::testing::random_network( seed, 4, 25 );
    auto const text = serialize_bench( net );
    auto const back = parse_bench( text );
    CHECK( back.primary_inputs == net.primary_inputs );
    CHECK( back.primary_outputs == net.primary_outputs );
    REQUIRE( back.gates.size() == net.gates.size() );
    CHECK( serialize_bench( back ) == text );
  }
}
