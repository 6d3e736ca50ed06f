#include <fsmcgp/cgp.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace fsmcgp
{

std::string_view to_string( gate_function f )
{
  return f == gate_function::nand ? "NAND" : "NOR";
}

std::size_t cgp_params::mutation_count() const
{
  const auto k = std::round( mutation_rate / 100.0 * static_cast<double>( gene_count() ) );
  return std::max<std::size_t>( 1u, static_cast<std::size_t>( k ) );
}

void cgp_params::validate() const
{
  if ( num_inputs == 0 )
  {
    throw std::invalid_argument( "cgp_params: at least one program input is required" );
  }
  if ( num_outputs == 0 )
  {
    throw std::invalid_argument( "cgp_params: at least one program output is required" );
  }
  if ( !( mutation_rate > 0.0 && mutation_rate <= 100.0 ) )
  {
    throw std::invalid_argument( "cgp_params: mutation rate must lie in (0, 100]" );
  }
}

genotype::genotype( const cgp_params& params, std::vector<std::uint32_t> genes )
    : params_( params ), genes_( std::move( genes ) )
{
  if ( genes_.size() != params_.gene_count() )
  {
    throw std::invalid_argument( "genotype: expected " + std::to_string( params_.gene_count() ) + " genes, got " +
                                 std::to_string( genes_.size() ) );
  }
}

std::pair<std::uint32_t, std::uint32_t> gene_range( const cgp_params& params, std::size_t position )
{
  if ( is_node_gene( params, position ) )
  {
    const auto column = static_cast<std::uint32_t>( position / genes_per_node );
    if ( position % genes_per_node == 0u )
    {
      return { 0u, function_count };
    }
    return { 0u, params.num_inputs + column };
  }
  return { 0u, static_cast<std::uint32_t>( params.address_count() ) };
}

std::string gene_violation::message() const
{
  return "gene " + std::to_string( position ) + " has value " + std::to_string( value ) + ", legal range is [" +
         std::to_string( lo ) + ", " + std::to_string( hi ) + ")";
}

std::optional<gene_violation> validate_genotype( const genotype& g )
{
  const auto& params = g.params();
  if ( g.gene_count() != params.gene_count() )
  {
    return gene_violation{ g.gene_count(), 0u, 0u, 0u };
  }
  const auto genes = g.genes();
  for ( std::size_t pos = 0; pos < genes.size(); ++pos )
  {
    const auto [lo, hi] = gene_range( params, pos );
    if ( genes[pos] < lo || genes[pos] >= hi )
    {
      return gene_violation{ pos, genes[pos], lo, hi };
    }
  }
  return std::nullopt;
}

genotype random_genotype( const cgp_params& params, rng& gen )
{
  params.validate();
  std::vector<std::uint32_t> genes( params.gene_count() );
  for ( std::size_t pos = 0; pos < genes.size(); ++pos )
  {
    const auto [lo, hi] = gene_range( params, pos );
    genes[pos] = lo + static_cast<std::uint32_t>( gen.below( hi - lo ) );
  }
  return genotype( params, std::move( genes ) );
}

void mutate_in_place( genotype& g, rng& gen, std::vector<std::size_t>* positions )
{
  const auto& params = g.params();
  const auto count = params.mutation_count();
  const auto genes = g.gene_count();
  for ( std::size_t i = 0; i < count; ++i )
  {
    const auto pos = static_cast<std::size_t>( gen.below( genes ) );
    const auto [lo, hi] = gene_range( params, pos );
    const auto old_value = g.genes()[pos];
    auto value = lo + static_cast<std::uint32_t>( gen.below( hi - lo ) );
    if ( params.mode == mutation_mode::strict_change && hi - lo > 1u )
    {
      while ( value == old_value )
      {
        value = lo + static_cast<std::uint32_t>( gen.below( hi - lo ) );
      }
    }
    g.set_gene( pos, value );
    if ( positions )
    {
      positions->push_back( pos );
    }
  }
}

genotype mutate( const genotype& g, rng& gen )
{
  auto child = g;
  mutate_in_place( child, gen );
  return child;
}

void decode_into( const genotype& g, std::vector<std::uint8_t>& is_active, std::vector<std::uint32_t>& active )
{
  const auto& params = g.params();
  const auto n_i = params.num_inputs;
  const auto m = params.columns;
  is_active.assign( m, 0u );
  active.clear();

  for ( unsigned o = 0; o < params.num_outputs; ++o )
  {
    const auto src = g.output( o );
    if ( src >= n_i )
    {
      is_active[src - n_i] = 1u;
    }
  }
  // connections only point left, so one right-to-left sweep closes the set
  for ( std::size_t j = m; j-- > 0; )
  {
    if ( !is_active[j] )
    {
      continue;
    }
    for ( unsigned k = 0; k < node_arity; ++k )
    {
      const auto src = g.node_input( j, k );
      if ( src >= n_i )
      {
        is_active[src - n_i] = 1u;
      }
    }
  }
  for ( std::uint32_t j = 0; j < m; ++j )
  {
    if ( is_active[j] )
    {
      active.push_back( j );
    }
  }
}

phenotype decode( const genotype& g )
{
  phenotype p;
  std::vector<std::uint8_t> is_active;
  decode_into( g, is_active, p.active );
  for ( unsigned o = 0; o < g.params().num_outputs; ++o )
  {
    p.output_sources.push_back( g.output( o ) );
  }
  return p;
}

void write_genotype( std::ostream& out, const genotype& g )
{
  const auto& params = g.params();
  out << "cgp " << params.num_inputs << ' ' << params.num_outputs << ' ' << params.columns << '\n';
  for ( std::size_t j = 0; j < params.columns; ++j )
  {
    if ( j > 0 )
    {
      out << " | ";
    }
    out << static_cast<unsigned>( g.node_function( j ) ) << ' ' << g.node_input( j, 0 ) << ' ' << g.node_input( j, 1 );
  }
  out << ( params.columns > 0 ? " ||" : "||" );
  for ( unsigned o = 0; o < params.num_outputs; ++o )
  {
    out << ' ' << g.output( o );
  }
  out << '\n';
}

std::string to_text( const genotype& g )
{
  std::ostringstream out;
  write_genotype( out, g );
  return out.str();
}

genotype read_genotype( std::istream& in )
{
  std::string line;
  std::string header;
  std::string body;
  while ( std::getline( in, line ) )
  {
    const auto first = line.find_first_not_of( " \t\r" );
    if ( first == std::string::npos || line[first] == '#' )
    {
      continue;
    }
    if ( header.empty() )
    {
      header = line;
    }
    else
    {
      body += line;
      body += ' ';
    }
  }

  std::istringstream hs( header );
  std::string tag;
  cgp_params params;
  if ( !( hs >> tag >> params.num_inputs >> params.num_outputs >> params.columns ) || tag != "cgp" )
  {
    throw genotype_format_error( "genotype header must read 'cgp <n_i> <n_o> <m>'" );
  }

  const auto split = body.find( "||" );
  if ( split == std::string::npos )
  {
    throw genotype_format_error( "genotype is missing the '||' output separator" );
  }

  std::vector<std::uint32_t> genes;
  genes.reserve( params.gene_count() );
  {
    auto nodes = body.substr( 0, split );
    for ( auto& c : nodes )
    {
      if ( c == '|' )
      {
        c = ' ';
      }
    }
    std::istringstream ns( nodes );
    std::uint32_t v = 0;
    while ( ns >> v )
    {
      genes.push_back( v );
    }
    if ( !ns.eof() )
    {
      throw genotype_format_error( "non-numeric node gene" );
    }
    if ( genes.size() != std::size_t{ genes_per_node } * params.columns )
    {
      throw genotype_format_error( "expected " + std::to_string( genes_per_node * params.columns ) +
                                   " node genes, got " + std::to_string( genes.size() ) );
    }
  }
  {
    std::istringstream os( body.substr( split + 2 ) );
    std::uint32_t v = 0;
    std::size_t outputs = 0;
    while ( os >> v )
    {
      genes.push_back( v );
      ++outputs;
    }
    if ( !os.eof() )
    {
      throw genotype_format_error( "non-numeric output gene" );
    }
    if ( outputs != params.num_outputs )
    {
      throw genotype_format_error( "expected " + std::to_string( params.num_outputs ) + " output genes, got " +
                                   std::to_string( outputs ) );
    }
  }

  genotype g( params, std::move( genes ) );
  if ( const auto violation = validate_genotype( g ) )
  {
    throw genotype_format_error( violation->message() );
  }
  return g;
}

genotype parse_genotype( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  return read_genotype( in );
}

} // namespace fsmcgp
