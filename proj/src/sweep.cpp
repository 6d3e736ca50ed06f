#include <fsmcgp/sweep.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <fsmcgp/evolution.hpp>

namespace fsmcgp
{

std::string format_rate( double value )
{
  char buffer[64];
  const auto [ptr, ec] = std::to_chars( buffer, buffer + sizeof( buffer ), value );
  return std::string( buffer, ec == std::errc{} ? ptr : buffer );
}

namespace
{

std::string format_fixed( double value, int digits )
{
  std::ostringstream out;
  out << std::fixed << std::setprecision( digits ) << value;
  return out.str();
}

template<typename T>
double median( std::vector<T> values )
{
  std::sort( values.begin(), values.end() );
  const auto n = values.size();
  return n % 2u == 1u ? static_cast<double>( values[n / 2u] )
                      : ( static_cast<double>( values[n / 2u - 1u] ) + static_cast<double>( values[n / 2u] ) ) / 2.0;
}

std::string optional_field( const std::optional<double>& value )
{
  return value ? format_rate( *value ) : std::string{};
}

std::vector<std::string> split_csv( const std::string& line )
{
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in( line );
  while ( std::getline( in, field, ',' ) )
  {
    const auto first = field.find_first_not_of( " \t\r" );
    const auto last = field.find_last_not_of( " \t\r" );
    fields.push_back( first == std::string::npos ? std::string{} : field.substr( first, last - first + 1 ) );
  }
  if ( !line.empty() && line.back() == ',' )
  {
    fields.emplace_back();
  }
  return fields;
}

template<typename T>
T parse_number( const std::string& text, std::size_t line, const char* what )
{
  T value{};
  const auto [ptr, ec] = std::from_chars( text.data(), text.data() + text.size(), value );
  if ( ec != std::errc{} || ptr != text.data() + text.size() )
  {
    throw sweep_error( "grid line " + std::to_string( line ) + ": bad " + what + " '" + text + "'" );
  }
  return value;
}

} // namespace

std::vector<sweep_cell> parse_grid( std::istream& in )
{
  std::vector<sweep_cell> grid;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( const auto hash = line.find( '#' ); hash != std::string::npos )
    {
      line.erase( hash );
    }
    if ( line.find_first_not_of( " \t\r" ) == std::string::npos )
    {
      continue;
    }
    const auto fields = split_csv( line );
    if ( !header_seen )
    {
      header_seen = true;
      if ( fields == std::vector<std::string>{ "benchmark", "lambda", "m", "mu_r", "seeds" } )
      {
        continue;
      }
      throw sweep_error( "grid line " + std::to_string( line_no ) + ": expected header 'benchmark,lambda,m,mu_r,seeds'" );
    }
    if ( fields.size() != 5u || fields[0].empty() )
    {
      throw sweep_error( "grid line " + std::to_string( line_no ) + ": expected 5 fields" );
    }
    sweep_cell cell;
    cell.benchmark = fields[0];
    cell.lambda = parse_number<unsigned>( fields[1], line_no, "lambda" );
    cell.m = parse_number<unsigned>( fields[2], line_no, "m" );
    cell.mu_r = parse_number<double>( fields[3], line_no, "mu_r" );
    cell.seeds = parse_number<unsigned>( fields[4], line_no, "seeds" );
    if ( cell.lambda == 0u )
    {
      throw sweep_error( "grid line " + std::to_string( line_no ) + ": lambda must be at least 1" );
    }
    if ( !( cell.mu_r > 0.0 && cell.mu_r <= 100.0 ) )
    {
      throw sweep_error( "grid line " + std::to_string( line_no ) + ": mu_r must lie in (0, 100]" );
    }
    grid.push_back( std::move( cell ) );
  }
  return grid;
}

sweep_result run_sweep( const std::map<std::string, truth_table>& tables, std::span<const sweep_cell> grid,
                        const sweep_options& options )
{
  if ( grid.empty() )
  {
    throw sweep_error( "empty sweep grid" );
  }
  for ( const auto& cell : grid )
  {
    if ( !tables.contains( cell.benchmark ) )
    {
      throw sweep_error( "unknown benchmark '" + cell.benchmark + "'" );
    }
    if ( cell.seeds == 0u )
    {
      throw sweep_error( "benchmark '" + cell.benchmark + "' has an empty seed list" );
    }
    if ( cell.lambda == 0u )
    {
      throw sweep_error( "benchmark '" + cell.benchmark + "' has lambda 0" );
    }
  }

  std::map<std::string, packed_table> packed;
  for ( const auto& cell : grid )
  {
    if ( !packed.contains( cell.benchmark ) )
    {
      packed.emplace( cell.benchmark, pack_table( tables.at( cell.benchmark ) ) );
    }
  }

  sweep_result result;
  for ( const auto& cell : grid )
  {
    for ( unsigned s = 0; s < cell.seeds; ++s )
    {
      sweep_run run;
      run.cell = cell;
      run.seed = options.first_seed + s;
      result.runs.push_back( std::move( run ) );
    }
  }

  std::atomic<std::size_t> next{ 0 };
  const auto worker = [&] {
    for ( auto i = next.fetch_add( 1 ); i < result.runs.size(); i = next.fetch_add( 1 ) )
    {
      auto& run = result.runs[i];
      const auto& table = packed.at( run.cell.benchmark );
      cgp_params params;
      params.num_inputs = table.num_vars();
      params.num_outputs = table.num_outs();
      params.columns = run.cell.m;
      params.mutation_rate = run.cell.mu_r;
      params.mode = options.mode;
      evolve_config cfg;
      cfg.lambda = run.cell.lambda;
      cfg.max_generations = options.max_generations;
      cfg.seed = run.seed;
      cfg.snapshot_stride = 0u;
      const auto report = evolve( table, params, cfg );
      run.solved = report.solved;
      run.generations = report.generations_used;
      run.evaluations = report.evaluations;
      run.active_nodes = report.active_nodes;
      run.wall_time_s = report.wall_time_s;
    }
  };

  const auto jobs = std::clamp<std::size_t>( options.jobs, 1u, result.runs.size() );
  {
    std::vector<std::jthread> pool;
    for ( std::size_t t = 1; t < jobs; ++t )
    {
      pool.emplace_back( worker );
    }
    worker();
  }

  auto run_it = result.runs.begin();
  for ( const auto& cell : grid )
  {
    sweep_aggregate agg;
    agg.cell = cell;
    std::vector<std::uint64_t> generations, evaluations;
    std::vector<std::size_t> nodes;
    for ( unsigned s = 0; s < cell.seeds; ++s, ++run_it )
    {
      ++agg.runs;
      if ( run_it->solved )
      {
        ++agg.solved;
        generations.push_back( run_it->generations );
        evaluations.push_back( run_it->evaluations );
        nodes.push_back( run_it->active_nodes );
      }
    }
    if ( !nodes.empty() )
    {
      agg.median_generations = median( generations );
      agg.median_evaluations = median( evaluations );
      agg.min_nodes = *std::min_element( nodes.begin(), nodes.end() );
      agg.median_nodes = median( nodes );
    }
    result.aggregates.push_back( std::move( agg ) );
  }
  return result;
}

std::string detail_csv_row( const sweep_run& run )
{
  std::ostringstream out;
  out << run.cell.benchmark << ',' << run.cell.lambda << ',' << run.cell.m << ',' << format_rate( run.cell.mu_r ) << ','
      << run.seed << ',' << ( run.solved ? 1 : 0 ) << ',' << run.generations << ',' << run.evaluations << ','
      << run.active_nodes << ',' << format_fixed( run.wall_time_s, 3 );
  return out.str();
}

void write_detail_csv( std::ostream& out, const sweep_result& result )
{
  out << detail_csv_header << '\n';
  for ( const auto& run : result.runs )
  {
    out << detail_csv_row( run ) << '\n';
  }
}

void write_aggregate_csv( std::ostream& out, const sweep_result& result )
{
  out << aggregate_csv_header << '\n';
  for ( const auto& agg : result.aggregates )
  {
    out << agg.cell.benchmark << ',' << agg.cell.lambda << ',' << agg.cell.m << ',' << format_rate( agg.cell.mu_r )
        << ',' << agg.runs << ',' << agg.solved << ',' << format_fixed( agg.solve_rate(), 3 ) << ','
        << optional_field( agg.median_generations ) << ',' << optional_field( agg.median_evaluations ) << ','
        << ( agg.min_nodes ? std::to_string( *agg.min_nodes ) : std::string{} ) << ','
        << optional_field( agg.median_nodes ) << '\n';
  }
}

} // namespace fsmcgp
