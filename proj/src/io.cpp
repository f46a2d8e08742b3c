#include "calkin/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace calkin {

namespace fs = std::filesystem;

std::string
format_number ( const double  v )
{
    return fmt::format( "{:.12g}", v );
}

json
to_json ( const SpaceSpec &  space )
{
    return { { "p", space.p() }, { "cuts", space.cuts() } };
}

SpaceSpec
space_from_json ( const json &  j )
{
    try
    {
        return SpaceSpec( j.at( "p" ).get< double >(), j.at( "cuts" ).get< std::vector< Index > >() );
    }
    catch ( const json::exception &  e )
    {
        throw InvalidInput( std::string( "malformed space JSON: " ) + e.what() );
    }
}

json
to_json ( const NormEstimate< cplx > &  e,
          const bool                    with_witness )
{
    json  j = { { "lower",      e.lower },
                { "upper",      std::isfinite( e.upper ) ? json( e.upper ) : json( nullptr ) },
                { "method",     std::string( to_string( e.method ) ) },
                { "iterations", e.iterations },
                { "converged",  e.converged } };

    if ( with_witness )
    {
        json  w = json::array();

        for ( Index i = 0; i < e.witness.size(); ++i )
            w.push_back( { e.witness( i ).real(), e.witness( i ).imag() } );

        j["witness"] = std::move( w );
    }

    return j;
}

json
to_json ( const CutPlan &  plan )
{
    json  bounds = json::array();

    for ( const auto &  b : plan.tail_bounds )
        bounds.push_back( { { "m", b.m }, { "i", b.i }, { "forward", b.forward }, { "adjoint", b.adjoint },
                            { "epsilon", plan.epsilon[ size_t( b.m ) ] } } );

    return { { "cuts",        plan.cuts },
             { "family_size", plan.family_size },
             { "exhausted",   plan.exhausted },
             { "tail_bounds", std::move( bounds ) } };
}

json
to_json ( const TruncationIndex &  ti )
{
    return { { "value",            ti.value },
             { "converged",        ti.converged },
             { "kernel_dim",       ti.kernel_dim },
             { "cokernel_dim",     ti.cokernel_dim },
             { "context_blocks",   ti.context },
             { "gap",              std::isfinite( ti.gap ) ? json( ti.gap ) : json( nullptr ) },
             { "smallest_forward", ti.smallest_forward },
             { "smallest_adjoint", ti.smallest_adjoint } };
}

json
to_json ( const IndexReport &  rep )
{
    return { { "symbol",           rep.symbol.to_string() },
             { "winding_index",    rep.winding_index ? json( *rep.winding_index ) : json( nullptr ) },
             { "truncation_index", to_json( rep.truncation ) },
             { "agree",            rep.agree } };
}

json
to_json ( const KhintchineConstants &  kc )
{
    return { { "n", kc.n }, { "p", kc.p },
             { "lower_embed", kc.lower_embed },
             { "upper_embed", kc.upper_embed },
             { "projection_norm", kc.projection_norm } };
}

std::string
read_text ( const fs::path &  path )
{
    std::ifstream  in( path, std::ios::binary );

    if ( ! in )
        throw InvalidInput( "cannot open " + path.string() );

    std::ostringstream  buf;

    buf << in.rdbuf();

    return buf.str();
}

void
write_text ( const fs::path &     path,
             const std::string &  text )
{
    if ( path.has_parent_path() )
        fs::create_directories( path.parent_path() );

    std::ofstream  out( path, std::ios::binary );

    if ( ! out )
        throw Error( "cannot write " + path.string() );

    out << text;
}

namespace {

std::vector< std::vector< double > >
read_csv_numbers ( const fs::path &  path )
{
    std::istringstream                    in( read_text( path ) );
    std::string                           line;
    std::vector< std::vector< double > >  rows;

    while ( std::getline( in, line ) )
    {
        if ( line.empty() || line[0] == '#' )
            continue;

        std::vector< double >  row;
        std::istringstream     cells( line );
        std::string            cell;

        while ( std::getline( cells, cell, ',' ) )
        {
            try
            {
                row.push_back( std::stod( cell ) );
            }
            catch ( const std::logic_error & )
            {
                throw InvalidInput( fmt::format( "{}: cannot parse CSV cell '{}'", path.string(), cell ) );
            }
        }

        rows.push_back( std::move( row ) );
    }

    return rows;
}

}// namespace anonymous

MatrixXc
read_matrix_csv ( const fs::path &  path )
{
    const auto   rows = read_csv_numbers( path );
    const Index  n    = Index( rows.size() );

    if ( n == 0 )
        throw InvalidInput( path.string() + ": empty matrix" );

    const auto  width = rows[0].size();

    if ( width != size_t( n ) && width != size_t( 2 * n ) )
        throw InvalidInput( path.string() + ": expected a square matrix with N real or 2N (re,im) columns" );

    const bool  paired = width == size_t( 2 * n );
    MatrixXc    m( n, n );

    for ( Index i = 0; i < n; ++i )
    {
        if ( rows[i].size() != width )
            throw InvalidInput( fmt::format( "{}: row {} has {} cells, expected {}", path.string(), i + 1, rows[i].size(), width ) );

        for ( Index j = 0; j < n; ++j )
            m( i, j ) = paired ? cplx( rows[i][2*j], rows[i][2*j+1] ) : cplx( rows[i][j], 0.0 );
    }

    return m;
}

void
write_matrix_csv ( const fs::path &  path,
                   const MatrixXc &  m )
{
    std::string  out;

    for ( Index i = 0; i < m.rows(); ++i )
    {
        for ( Index j = 0; j < m.cols(); ++j )
        {
            if ( j > 0 )
                out += ',';

            out += format_number( m( i, j ).real() ) + ',' + format_number( m( i, j ).imag() );
        }

        out += '\n';
    }

    write_text( path, out );
}

VectorXc
read_vector_csv ( const fs::path &  path )
{
    const auto  rows = read_csv_numbers( path );
    VectorXc    v( Index( rows.size() ) );

    for ( size_t i = 0; i < rows.size(); ++i )
    {
        if ( rows[i].empty() || rows[i].size() > 2 )
            throw InvalidInput( fmt::format( "{}: vector row {} must be re or re,im", path.string(), i + 1 ) );

        v( Index( i ) ) = cplx( rows[i][0], rows[i].size() == 2 ? rows[i][1] : 0.0 );
    }

    return v;
}

void
write_vector_csv ( const fs::path &  path,
                   const VectorXc &  v )
{
    std::string  out;

    for ( Index i = 0; i < v.size(); ++i )
        out += format_number( v( i ).real() ) + ',' + format_number( v( i ).imag() ) + '\n';

    write_text( path, out );
}

void
save_operator ( const BlockBandedOperator< cplx > &  t,
                const fs::path &                     header )
{
    fs::path  payload = header;

    payload.replace_extension( ".blocks.csv" );

    std::string  csv;

    t.for_each_block( [&] ( Index i, Index j, const MatrixXc &  blk )
    {
        for ( Index c = 0; c < blk.cols(); ++c )
            for ( Index r = 0; r < blk.rows(); ++r )
                if ( blk( r, c ) != cplx( 0 ) )
                    csv += fmt::format( "{},{},{},{},{:.17g},{:.17g}\n", i, j, r, c, blk( r, c ).real(), blk( r, c ).imag() );
    } );

    json  j = { { "space", to_json( t.space() ) }, { "band", t.band() }, { "payload", payload.filename().string() } };

    write_text( payload, csv );
    write_text( header, j.dump( 2 ) + "\n" );
}

BlockBandedOperator< cplx >
load_operator ( const fs::path &  header )
{
    json  j;

    try
    {
        j = json::parse( read_text( header ) );
    }
    catch ( const json::exception &  e )
    {
        throw InvalidInput( header.string() + ": " + e.what() );
    }

    const auto  space = space_from_json( j.at( "space" ) );
    const auto  band  = j.at( "band" ).get< Index >();

    BlockBandedOperator< cplx >  t( space, band );
    std::vector< MatrixXc >      blocks;

    // accumulate per block, then store
    std::map< std::pair< Index, Index >, MatrixXc >  acc;

    for ( const auto &  row : read_csv_numbers( header.parent_path() / j.at( "payload" ).get< std::string >() ) )
    {
        if ( row.size() != 6 )
            throw InvalidInput( "operator payload rows need 6 cells" );

        const auto  bi = Index( row[0] ), bj = Index( row[1] ), r = Index( row[2] ), c = Index( row[3] );

        if ( ! t.in_band( bi, bj ) || r < 0 || c < 0 || r >= space.block_size( bi ) || c >= space.block_size( bj ) )
            throw InvalidInput( "operator payload entry outside the block structure" );

        auto [ it, fresh ] = acc.try_emplace( { bi, bj }, MatrixXc::Zero( space.block_size( bi ), space.block_size( bj ) ) );

        it->second( r, c ) = cplx( row[4], row[5] );
    }

    for ( auto &  [ key, m ] : acc )
        t.set_block( key.first, key.second, std::move( m ) );

    return t;
}

std::string
sha256_file ( const fs::path &  path )
{
    const std::string  data = read_text( path );
    unsigned char      digest[ EVP_MAX_MD_SIZE ];
    unsigned int       len = 0;

    if ( EVP_Digest( data.data(), data.size(), digest, &len, EVP_sha256(), nullptr ) != 1 )
        throw Error( "SHA-256 failed for " + path.string() );

    std::string  hex;

    for ( unsigned int  k = 0; k < len; ++k )
        hex += fmt::format( "{:02x}", digest[k] );

    return hex;
}

}// namespace calkin
