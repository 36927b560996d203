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
  \file drtl.cpp
  \brief Command-line driver: parse -> synth -> pipeline -> map ->
         power -> simulate
*/

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <drtl/bench.hpp>
#include <drtl/interconnect.hpp>
#include <drtl/pipeline.hpp>
#include <drtl/power.hpp>
#include <drtl/sim.hpp>
#include <drtl/synth.hpp>
#include <drtl/tlg.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

constexpr std::uint64_t default_seed = 1;

std::uint64_t seed_from_env()
{
  if ( auto const* s = std::getenv( "DRTL_SEED" ) )
  {
    return std::stoull( s );
  }
  return default_seed;
}

std::string slurp( std::string const& path )
{
  std::ifstream f( path );
  if ( !f )
  {
    throw std::runtime_error( "cannot open '" + path + "'" );
  }
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file( fs::path const& path, std::string const& content )
{
  std::ofstream f( path );
  if ( !f )
  {
    throw std::runtime_error( "cannot write '" + path.string() + "'" );
  }
  f << content;
}

drtl::device_model device_by_name( std::string const& name, std::string const& config_path )
{
  if ( !config_path.empty() )
  {
    std::ifstream f( config_path );
    if ( !f )
      throw std::runtime_error( "cannot open device config '" + config_path + "'" );
    for ( auto const& d : drtl::parse_device_config( f ) )
    {
      if ( d.name == name )
        return d;
    }
    throw std::runtime_error( "device '" + name + "' not in config" );
  }
  if ( name == "ideal" )
    return drtl::device_model::ideal();
  if ( name == "mtj3" )
    return drtl::device_model::mtj( 3.0 );
  if ( name == "mtj4" )
    return drtl::device_model::mtj( 4.0 );
  if ( name == "domain_wall" )
    return drtl::device_model::domain_wall();
  if ( name == "ag_si" )
    return drtl::device_model::ag_si();
  throw std::runtime_error( "unknown device preset '" + name + "'" );
}

json stats_json( drtl::network_stats_record const& s )
{
  return { { "gates_by_kind", s.gates_by_kind },
           { "num_gates", s.num_gates },
           { "num_nets", s.num_nets },
           { "max_fanin", s.max_fanin },
           { "max_fanout", s.max_fanout },
           { "depth", s.depth } };
}

json report_json( drtl::energy_report const& r )
{
  return { { "gate_count", r.gate_count },
           { "total_fanout", r.total_fanout },
           { "energy_per_cycle_fj", r.energy_per_cycle_fj },
           { "throughput_period_ns", r.throughput_period_ns },
           { "latency_ns", r.latency_ns },
           { "edp_fj_ns", r.edp_fj_ns },
           { "avg_energy_per_gate_fj", r.avg_energy_per_gate_fj } };
}

drtl::pipelined_network load_staged( std::string const& path )
{
  std::ifstream f( path );
  if ( !f )
  {
    throw std::runtime_error( "cannot open '" + path + "'" );
  }
  auto p = drtl::parse_staged( f );
  drtl::validate( p );
  return p;
}

json comparisons_json( std::vector<drtl::baseline_row> const& rows )
{
  json out = json::array();
  for ( auto const& row : rows )
  {
    auto const c = drtl::compare_to_baseline( row );
    json j = { { "name", row.name },
               { "stated_energy_red_pct", row.stated_energy_red_pct },
               { "computed_energy_red_pct", c.energy_reduction_pct },
               { "stated_edp_red_pct", row.stated_edp_red_pct },
               { "computed_edp_red_pct", c.edp_reduction_pct },
               { "flags", json::array() } };
    if ( c.energy_mismatch )
      j["flags"].push_back( "BASELINE_MISMATCH:energy" );
    if ( c.edp_mismatch )
      j["flags"].push_back( "BASELINE_MISMATCH:edp" );
    out.push_back( j );
  }
  return out;
}

std::string comparisons_markdown( std::vector<drtl::baseline_row> const& rows )
{
  std::ostringstream os;
  os << "| name | energy red. % (stated) | energy red. % (computed) | EDP red. % (stated) | EDP red. % "
        "(computed) | flags |\n";
  os << "|------|------|------|------|------|------|\n";
  for ( auto const& row : rows )
  {
    auto const c = drtl::compare_to_baseline( row );
    os << "| " << row.name << " | " << row.stated_energy_red_pct << " | " << c.energy_reduction_pct << " | "
       << row.stated_edp_red_pct << " | " << c.edp_reduction_pct << " | "
       << ( c.energy_mismatch ? "BASELINE_MISMATCH:energy " : "" )
       << ( c.edp_mismatch ? "BASELINE_MISMATCH:edp" : "" ) << " |\n";
  }
  return os.str();
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "drtl: threshold logic compiler and analysis toolchain" };
  app.require_subcommand( 1 );

  std::string input;
  std::string staged_path;
  std::string out_dir;
  std::string format = "json";
  std::string device = "ideal";
  std::string device_config;
  std::string baseline_csv;
  std::string mode = "random";
  unsigned scheme_limit = 2;
  double e_gate = 0.3, e_fanout = 0.2, clock_ns = 0.5;
  double sigma = 0.1;
  std::uint64_t trials = 10000;
  std::uint64_t vectors = 10000;
  std::uint64_t seed = seed_from_env();

  auto add_common = [&]( CLI::App* cmd ) {
    cmd->add_option( "--out", out_dir, "output directory" );
    cmd->add_option( "--format", format, "json|csv|md" )->check( CLI::IsMember( { "json", "csv", "md" } ) );
  };

  auto* c_stats = app.add_subcommand( "stats", "network statistics for a .bench file" );
  c_stats->add_option( "bench", input )->required();
  add_common( c_stats );

  auto* c_synth = app.add_subcommand( "synth", "synthesize a .bench file into a threshold network" );
  c_synth->add_option( "bench", input )->required();
  c_synth->add_option( "--scheme", scheme_limit, "fan-in limit (2, 3 or 4)" )->check( CLI::Range( 2u, 4u ) );
  add_common( c_synth );

  auto* c_pipe = app.add_subcommand( "pipeline", "levelize a .tlg file into pipeline stages" );
  c_pipe->add_option( "tlg", input )->required();
  c_pipe->add_option( "--clock-ns", clock_ns, "clock period in ns" );
  add_common( c_pipe );

  auto* c_map = app.add_subcommand( "map", "map stage boundaries onto crossbar bitstreams" );
  c_map->add_option( "staged", staged_path )->required();
  add_common( c_map );

  auto* c_power = app.add_subcommand( "power", "energy/delay/EDP report for a staged file" );
  c_power->add_option( "staged", staged_path )->required();
  c_power->add_option( "--e-gate-fj", e_gate, "energy per gate (fJ)" );
  c_power->add_option( "--e-fanout-fj", e_fanout, "energy per fan-out (fJ)" );
  c_power->add_option( "--clock-ns", clock_ns, "clock period in ns" );
  c_power->add_option( "--baseline", baseline_csv, "baseline CSV (bundled table when omitted)" );
  add_common( c_power );

  auto* c_verify = app.add_subcommand( "verify", "equivalence check staged network vs .bench reference" );
  c_verify->add_option( "bench", input )->required();
  c_verify->add_option( "staged", staged_path )->required();
  c_verify->add_option( "--mode", mode )->check( CLI::IsMember( { "exhaustive", "random" } ) );
  c_verify->add_option( "--vectors", vectors, "random vector count" );
  c_verify->add_option( "--seed", seed, "rng seed" );
  add_common( c_verify );

  auto* c_mc = app.add_subcommand( "montecarlo", "variation Monte Carlo failure rates" );
  c_mc->add_option( "target", input, "library gate name (AND2, OR2, ...) or staged file" )->required();
  c_mc->add_option( "--sigma", sigma, "relative conductance std-dev" );
  c_mc->add_option( "--trials", trials, "trials per gate" );
  c_mc->add_option( "--seed", seed, "rng seed" );
  c_mc->add_option( "--device", device, "device preset" );
  c_mc->add_option( "--device-config", device_config, "device preset config file" );
  add_common( c_mc );

  auto* c_all = app.add_subcommand( "run-all", "full flow: parse, synth, pipeline, map, power, verify" );
  c_all->add_option( "bench", input )->required();
  c_all->add_option( "--scheme", scheme_limit )->check( CLI::Range( 2u, 4u ) );
  c_all->add_option( "--clock-ns", clock_ns );
  c_all->add_option( "--e-gate-fj", e_gate );
  c_all->add_option( "--e-fanout-fj", e_fanout );
  c_all->add_option( "--baseline", baseline_csv );
  c_all->add_option( "--mode", mode )->check( CLI::IsMember( { "exhaustive", "random" } ) );
  c_all->add_option( "--vectors", vectors );
  c_all->add_option( "--seed", seed );
  add_common( c_all );

  CLI11_PARSE( app, argc, argv );

  try
  {
    auto out_path = [&]( std::string const& name ) {
      if ( out_dir.empty() )
        return fs::path( name );
      fs::create_directories( out_dir );
      return fs::path( out_dir ) / name;
    };
    auto base_name = [&]( std::string const& path ) { return fs::path( path ).stem().string(); };
    auto load_rows = [&]() {
      if ( baseline_csv.empty() )
        return drtl::load_baseline_string( drtl::builtin_baseline_csv() );
      std::ifstream f( baseline_csv );
      if ( !f )
        throw std::runtime_error( "cannot open '" + baseline_csv + "'" );
      return drtl::load_baseline( f );
    };

    if ( *c_stats )
    {
      auto const net = drtl::parse_bench( slurp( input ) );
      auto const s = drtl::network_stats( net );
      std::cout << stats_json( s ).dump( 2 ) << "\n";
    }
    else if ( *c_synth )
    {
      auto const net = drtl::parse_bench( slurp( input ) );
      auto const scheme = drtl::quantization_scheme::default_for( scheme_limit );
      auto const tlg = drtl::synthesize( drtl::decompose_fanin( net, scheme_limit ), scheme );
      auto const path = out_path( base_name( input ) + ".tlg" );
      write_file( path, drtl::serialize_tlg( tlg ) );
      json counts;
      for ( auto const& [limit, count] : drtl::node_count_study( net, { 2, 3, 4 } ) )
        counts[std::to_string( limit )] = count;
      std::cout << json{ { "tlg_file", path.string() },
                         { "nodes", tlg.nodes.size() },
                         { "node_count_by_fanin_limit", counts } }
                       .dump( 2 )
                << "\n";
    }
    else if ( *c_pipe )
    {
      std::ifstream f( input );
      if ( !f )
        throw std::runtime_error( "cannot open '" + input + "'" );
      auto const tlg = drtl::parse_tlg( f );
      auto const p = drtl::levelize( tlg, clock_ns );
      auto const path = out_path( base_name( input ) + ".staged" );
      write_file( path, drtl::serialize_staged( p ) );
      auto const t = drtl::timing_report( p );
      std::cout << json{ { "staged_file", path.string() },
                         { "depth", t.depth },
                         { "latency_ns", t.latency_ns },
                         { "throughput_period_ns", t.throughput_period_ns } }
                       .dump( 2 )
                << "\n";
    }
    else if ( *c_map )
    {
      auto const p = load_staged( staged_path );
      auto const profile = drtl::fanout_profile( p );
      json boundaries = json::array();
      for ( std::size_t s = 0; s < p.depth(); ++s )
      {
        auto const cfg = drtl::map_boundary( p, s );
        auto const bits = drtl::crossbar_bitstream( cfg );
        auto const bits_path = out_path( base_name( staged_path ) + ".b" + std::to_string( s ) + ".bits" );
        std::ofstream bf( bits_path, std::ios::binary );
        bf.write( reinterpret_cast<char const*>( bits.data() ), static_cast<std::streamsize>( bits.size() ) );
        boundaries.push_back( { { "boundary", s },
                                { "rows", cfg.rows.size() },
                                { "cols", cfg.cols.size() },
                                { "on_cells", cfg.on_count() },
                                { "r_on_ohm", cfg.r_on },
                                { "r_off_ohm", cfg.r_off },
                                { "swing_v", cfg.swing },
                                { "leakage_w", drtl::leakage_estimate( cfg ) },
                                { "bitstream", bits_path.string() } } );
      }
      std::cout << json{ { "total_fanout", profile.total }, { "boundaries", boundaries } }.dump( 2 ) << "\n";
    }
    else if ( *c_power )
    {
      auto p = load_staged( staged_path );
      drtl::energy_model model{ e_gate, e_fanout, clock_ns };
      auto const report = drtl::estimate( p, model );
      auto const rows = load_rows();
      json j = { { "report", report_json( report ) },
                 { "comparison_kind", "model-vs-published" },
                 { "baseline", comparisons_json( rows ) } };
      if ( format == "md" )
        std::cout << comparisons_markdown( rows ) << "\n" << report_json( report ).dump( 2 ) << "\n";
      else
        std::cout << j.dump( 2 ) << "\n";
    }
    else if ( *c_verify )
    {
      auto const net = drtl::parse_bench( slurp( input ) );
      auto const p = load_staged( staged_path );
      auto const m = mode == "exhaustive" ? drtl::check_mode::exhaustive : drtl::check_mode::random;
      auto const v = drtl::equivalence_check( net, p, m, vectors, seed );
      json j = { { "pass", v.pass } };
      if ( !v.pass )
      {
        std::string bits;
        for ( auto const b : v.counterexample )
          bits += b ? '1' : '0';
        j["counterexample"] = bits;
      }
      std::cout << j.dump( 2 ) << "\n";
      return v.pass ? 0 : 1;
    }
    else if ( *c_mc )
    {
      auto const dev = device_by_name( device, device_config );
      std::vector<std::pair<std::string, drtl::threshold_gate>> targets;
      if ( fs::exists( input ) )
      {
        auto const p = load_staged( input );
        for ( auto const& stage : p.stages )
          for ( auto const& node : stage )
            targets.emplace_back( node.output, node.gate );
      }
      else
      {
        bool found = false;
        for ( auto const& [name, gate] : drtl::synthesis_library() )
        {
          if ( name == input )
          {
            targets.emplace_back( name, gate );
            found = true;
          }
        }
        if ( !found )
          throw std::runtime_error( "'" + input + "' is neither a file nor a library gate name" );
      }
      json rowsj = json::array();
      for ( std::size_t i = 0; i < targets.size(); ++i )
      {
        auto const& [name, gate] = targets[i];
        auto const rate = drtl::monte_carlo_failure_rate( gate, dev, sigma, trials, seed + i );
        rowsj.push_back( { { "gate", name },
                           { "sigma", sigma },
                           { "trials", trials },
                           { "failure_rate", rate },
                           { "max_safe_relative_deviation", drtl::max_safe_relative_deviation( gate, dev ) } } );
      }
      std::cout << json{ { "device", dev.name }, { "rows", rowsj } }.dump( 2 ) << "\n";
    }
    else if ( *c_all )
    {
      auto const name = base_name( input );
      auto const net = drtl::parse_bench( slurp( input ) );
      auto const scheme = drtl::quantization_scheme::default_for( scheme_limit );
      auto const tlg = drtl::synthesize( drtl::decompose_fanin( net, scheme_limit ), scheme );
      write_file( out_path( name + ".tlg" ), drtl::serialize_tlg( tlg ) );
      auto const p = drtl::levelize( tlg, clock_ns );
      write_file( out_path( name + ".staged" ), drtl::serialize_staged( p ) );
      auto const report = drtl::estimate( p, { e_gate, e_fanout, clock_ns } );
      auto const m = ( mode == "exhaustive" || net.primary_inputs.size() <= 12 )
                         ? drtl::check_mode::exhaustive
                         : drtl::check_mode::random;
      auto const v = drtl::equivalence_check( net, p, m, vectors, seed );
      auto const t = drtl::timing_report( p );
      json j = { { "benchmark", name },
                 { "stats", stats_json( drtl::network_stats( net ) ) },
                 { "tlg_nodes", tlg.nodes.size() },
                 { "depth", t.depth },
                 { "latency_ns", t.latency_ns },
                 { "throughput_period_ns", t.throughput_period_ns },
                 { "report", report_json( report ) },
                 { "comparison_kind", "model-vs-published" },
                 { "baseline", comparisons_json( load_rows() ) },
                 { "verified", v.pass } };
      write_file( out_path( name + ".report.json" ), j.dump( 2 ) + "\n" );
      std::cout << j.dump( 2 ) << "\n";
      return v.pass ? 0 : 1;
    }
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
