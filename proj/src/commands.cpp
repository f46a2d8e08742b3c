#include "calkin/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "calkin/io.hpp"

namespace calkin {

namespace fs = std::filesystem;

namespace {

Budget
make_budget ( const CommonParams &  params )
{
    Budget  b;

    b.iterations = params.budget;
    b.seed       = params.seed;

    return b;
}

void
check_common ( const CommonParams &  params )
{
    if ( params.p.empty() )
        throw InvalidInput( "at least one exponent p is required" );

    for ( double  p : params.p )
        if ( ! ( p > 1.0 ) || ! std::isfinite( p ) )
            throw InvalidInput( fmt::format( "exponent p = {} is outside (1, inf)", p ) );

    if ( params.n < 0 )
        throw InvalidInput( "--n must be positive" );

    if ( params.budget <= 0 )
        throw InvalidInput( "--budget must be a positive iteration count" );

    if ( ! ( params.window >= 0.0 ) || params.window >= 1.0 )
        throw InvalidInput( "--window must lie in [0, 1)" );
}

void
fail ( CommandResult &      res,
       const std::string &  what )
{
    res.status = exit_code::check_failed;
    res.failures.push_back( what );
}

fs::path
emit ( CommandResult &      res,
       const fs::path &     path,
       const std::string &  text )
{
    write_text( path, text );
    res.outputs.push_back( path );

    return path;
}

std::string
quoted ( const std::string &  s )
{
    std::string  q = "\"";

    for ( char  c : s )
    {
        if ( c == '"' )
            q += '"';

        q += c;
    }

    return q + '"';
}

// random block banded operator with Gaussian complex entries
BlockBandedOperator< cplx >
random_operator ( const SpaceSpec &   space,
                  const Index         band,
                  std::mt19937_64 &   rng )
{
    std::normal_distribution< double >  normal;
    BlockBandedOperator< cplx >         t( space, band );

    for ( Index j = 0; j < space.num_blocks(); ++j )
        for ( Index i = std::max< Index >( 0, j - t.band() ); i <= std::min( space.num_blocks() - 1, j + t.band() ); ++i )
        {
            MatrixXc  b( space.block_size( i ), space.block_size( j ) );

            for ( Index c = 0; c < b.cols(); ++c )
                for ( Index r = 0; r < b.rows(); ++r )
                {
                    const double  re = normal( rng );
                    const double  im = normal( rng );

                    b( r, c ) = cplx( re, im );
                }

            t.set_block( i, j, std::move( b ) );
        }

    return t;
}

}// namespace anonymous

//////////////////////////////////////////////////////////////////////////////
//
// norm
//
//////////////////////////////////////////////////////////////////////////////

CommandResult
run_norm ( const NormParams &  params )
{
    check_common( params );

    CommandResult  res;

    BlockBandedOperator< cplx >  base( SpaceSpec::unit( params.p.front(), 1 ), 0 );
    double                       discarded = 0.0;

    if ( params.input.empty() )
    {
        const Index      n = params.n > 0 ? params.n : 32;
        std::mt19937_64  rng( params.seed );

        base = random_operator( SpaceSpec::uniform( 2.0, n, params.width ), params.band, rng );
    }
    else if ( params.input.extension() == ".json" )
    {
        base = load_operator( params.input );
        res.inputs.push_back( params.input );
    }
    else
    {
        const MatrixXc  a = read_matrix_csv( params.input );
        auto            blocked = from_dense( a, SpaceSpec::uniform( 2.0, a.rows(), params.width ), params.band );

        base      = std::move( blocked.op );
        discarded = blocked.discarded_norm;
        res.inputs.push_back( params.input );
    }

    const auto  sandwich = norm_sandwich( base );
    double      diag_sum = 0.0;

    for ( Index s = -base.band(); s <= base.band(); ++s )
        diag_sum += base.diagonal_sup( s );

    json  estimates = json::array();

    for ( double  p : params.p )
    {
        const auto  t = base.with_space( base.space().with_exponent( p ) );
        const auto  e = estimate_norm( t, make_budget( params ) );

        auto  j = to_json( e, false );

        j["p"] = p;
        estimates.push_back( std::move( j ) );

        if ( params.check )
        {
            if ( e.lower < sandwich.lower - 1e-9 )
                fail( res, fmt::format( "p = {}: estimate {} below the block witness {}", p, e.lower, sandwich.lower ) );

            if ( e.lower > std::min( sandwich.upper, diag_sum ) + 1e-9 )
                fail( res, fmt::format( "p = {}: estimate {} above the block bound", p, e.lower ) );
        }
    }

    json  report = { { "seed",             params.seed },
                     { "dim",              base.space().dim() },
                     { "cuts",             base.space().cuts() },
                     { "band",             base.band() },
                     { "discarded_norm",   discarded },
                     { "sup_block_norm",   sandwich.lower },
                     { "sandwich_upper",   sandwich.upper },
                     { "diagonal_sum",     diag_sum },
                     { "estimates",        std::move( estimates ) } };

    emit( res, params.out / "norm.json", report.dump( 2 ) + "\n" );

    return res;
}

//////////////////////////////////////////////////////////////////////////////
//
// tridiag
//
//////////////////////////////////////////////////////////////////////////////

namespace {

std::vector< MatrixXc >
builtin_family ( const Index  n )
{
    const auto  sym = LaurentPolynomial::monomial( 1 ) + LaurentPolynomial::monomial( -1 );
    MatrixXc    decay( n, n );

    for ( Index j = 0; j < n; ++j )
        for ( Index i = 0; i < n; ++i )
            decay( i, j ) = std::pow( 3.0, -double( std::abs( i - j ) ) );

    return { forward_shift( n ), backward_shift( n ), toeplitz_matrix( sym, n ), decay };
}

}// namespace anonymous

CommandResult
run_tridiag ( const TridiagParams &  params )
{
    check_common( params );

    CommandResult            res;
    std::vector< MatrixXc >  family;

    if ( params.matrices.empty() )
        family = builtin_family( params.n > 0 ? params.n : 256 );
    else
    {
        for ( const auto &  path : params.matrices )
        {
            family.push_back( read_matrix_csv( path ) );
            res.inputs.push_back( path );
        }
    }

    const Index  n    = family.front().rows();
    const auto   plan = choose_cuts( family, n );

    std::string  csv = "k,i,residual,limit,seed\n";

    for ( size_t i = 0; i < family.size(); ++i )
    {
        for ( const auto &  c : verify_tridiag_error( family[i], Index( i + 1 ), plan ) )
        {
            csv += fmt::format( "{},{},{},{},{}\n", c.k, i + 1, format_number( c.value ), format_number( c.limit ), params.seed );

            if ( params.check && c.value > std::exp2( -double( c.k ) ) )
                fail( res, fmt::format( "T_{} column residual at k = {} is {} > 2^-{}", i + 1, c.k, c.value, c.k ) );
        }
    }

    if ( params.check )
    {
        if ( plan.exhausted )
            fail( res, "cut plan exhausted" );

        for ( const auto &  b : plan.tail_bounds )
            if ( std::max( b.forward, b.adjoint ) > plan.epsilon[ size_t( b.m ) ] )
                fail( res, fmt::format( "tail bound at m = {}, i = {} exceeds its tolerance", b.m, b.i ) );
    }

    auto  j = to_json( plan );

    j["seed"] = params.seed;
    emit( res, params.out / "plan.json", j.dump( 2 ) + "\n" );
    emit( res, params.out / "residuals.csv", csv );

    return res;
}

//////////////////////////////////////////////////////////////////////////////
//
// transfer-experiment
//
//////////////////////////////////////////////////////////////////////////////

namespace {

struct TransferRow
{
    int                 id;
    CalculusExperiment  ex;
};

std::string
scatter_svg ( const std::vector< TransferRow > &  rows,
              const int                           max_degree )
{
    constexpr double  w = 640, h = 400, left = 60, right = 20, top = 20, bottom = 50;

    double  ymax = 3.2;

    for ( const auto &  r : rows )
        ymax = std::max( { ymax, r.ex.transferred_norm.lower / r.ex.sup_circle,
                           r.ex.plain_shift_norm.lower / r.ex.sup_circle } );

    const auto  x_of = [&] ( double d ) { return left + ( w - left - right ) * d / double( max_degree ); };
    const auto  y_of = [&] ( double v ) { return h - bottom - ( h - top - bottom ) * v / ymax; };

    std::string  svg = fmt::format( "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n", w, h );

    svg += fmt::format( "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", w, h );
    svg += fmt::format( "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", left, h - bottom, w - right );
    svg += fmt::format( "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", left, h - bottom, top );

    for ( double  ref : { 1.0 / 3.0, 1.0, 3.0 } )
        svg += fmt::format( "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n",
                            left, y_of( ref ), w - right );

    for ( const auto &  r : rows )
    {
        const double  x = x_of( r.ex.symbol.degree() );

        svg += fmt::format( "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"steelblue\"/>\n",
                            x, y_of( r.ex.transferred_norm.lower / r.ex.sup_circle ) );
        svg += fmt::format( "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"none\" stroke=\"firebrick\"/>\n",
                            x, y_of( r.ex.plain_shift_norm.lower / r.ex.sup_circle ) );
    }

    svg += fmt::format( "<text x=\"{}\" y=\"{}\" font-size=\"12\">degree</text>\n", w / 2, h - 15 );
    svg += fmt::format( "<text x=\"10\" y=\"{}\" font-size=\"12\">norm / sup|f|</text>\n", top + 10 );
    svg += "</svg>\n";

    return svg;
}

}// namespace anonymous

CommandResult
run_transfer ( const TransferParams &  params )
{
    check_common( params );

    if ( params.count < 0 )
        throw InvalidInput( "--count must not be negative" );

    CommandResult  res;

    ExperimentOptions  opts;

    opts.p               = params.p.front();
    opts.n               = params.n > 0 ? params.n : 512;
    opts.budget          = make_budget( params );
    opts.window_fraction = params.window;
    opts.ratio_tolerance = params.tolerance;
    opts.plain_n         = params.plain_n;

    std::mt19937_64             rng( params.seed );
    std::vector< TransferRow >  rows;

    for ( int  id = 0; id < params.count; ++id )
        rows.push_back( { id, run_calculus_experiment( random_symbol( rng, params.max_degree ), opts ) } );

    std::string  csv = "id,degree,sup_circle,transferred_lower,transferred_upper,plain_lower,plain_ratio,"
                       "compression_residual,window_blocks,index_expected,index_observed,seed,symbol\n";

    double  max_plain  = 0.0;
    double  max_transf = 0.0;
    double  min_transf = std::numeric_limits< double >::infinity();

    for ( const auto &  [ id, ex ] : rows )
    {
        const double  plain_ratio = ex.plain_shift_norm.lower / ex.sup_circle;
        const double  transf      = ex.transferred_norm.lower / ex.sup_circle;

        max_plain  = std::max( max_plain, plain_ratio );
        max_transf = std::max( max_transf, transf );
        min_transf = std::min( min_transf, transf );

        csv += fmt::format( "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                            id, ex.symbol.degree(),
                            format_number( ex.sup_circle ),
                            format_number( ex.transferred_norm.lower ),
                            format_number( ex.transferred_norm.upper ),
                            format_number( ex.plain_shift_norm.lower ),
                            format_number( plain_ratio ),
                            format_number( ex.compression_residual ),
                            ex.window,
                            ex.index_expected ? std::to_string( *ex.index_expected ) : std::string(),
                            ex.index_observed.converged ? std::to_string( ex.index_observed.value ) : std::string(),
                            params.seed,
                            quoted( ex.symbol.to_string() ) );

        if ( params.check )
        {
            if ( transf > 3.0 + params.tolerance )
                fail( res, fmt::format( "polynomial {}: transferred tail norm {} > 3 + tol", id, transf ) );

            if ( transf < 1.0 / 3.0 - params.tolerance )
                fail( res, fmt::format( "polynomial {}: transferred tail norm {} < 1/3 - tol", id, transf ) );

            if ( ex.plain_shift_norm.lower < ex.sup_circle - 0.02 )
                fail( res, fmt::format( "polynomial {}: plain norm {} below sup|f| - 0.02", id, ex.plain_shift_norm.lower ) );
        }
    }

    json  summary = { { "seed",                params.seed },
                      { "p",                   opts.p },
                      { "n",                   opts.n },
                      { "plain_n",             opts.plain_n > 0 ? opts.plain_n : opts.n },
                      { "count",               params.count },
                      { "max_degree",          params.max_degree },
                      { "window_fraction",     params.window },
                      { "max_plain_ratio",     rows.empty() ? json( nullptr ) : json( max_plain ) },
                      { "max_transferred",     rows.empty() ? json( nullptr ) : json( max_transf ) },
                      { "min_transferred",     rows.empty() ? json( nullptr ) : json( min_transf ) },
                      { "failures",            res.failures } };

    emit( res, params.out / "transfer.csv", csv );
    emit( res, params.out / "summary.json", summary.dump( 2 ) + "\n" );

    if ( params.svg )
        emit( res, params.out / "transfer.svg", scatter_svg( rows, params.max_degree ) );

    return res;
}

//////////////////////////////////////////////////////////////////////////////
//
// index
//
//////////////////////////////////////////////////////////////////////////////

CommandResult
run_index ( const IndexParams &  params )
{
    check_common( params );

    CommandResult  res;

    std::vector< std::string >  symbols = params.symbols;

    if ( symbols.empty() )
        symbols = { "-1:1,0", "1:1,0", "2:1,0", "1:1,0; 0:-2,0", "1:1,0; -1:1,0; 0:3,0" };

    const Index  n       = params.n > 0 ? params.n : 128;
    json         reports = json::array();

    for ( const auto &  s : symbols )
    {
        const auto  rep = index_report( LaurentPolynomial::parse( s ), n );

        if ( params.check && ! rep.agree )
            fail( res, "index mismatch for " + rep.symbol.to_string() );

        reports.push_back( to_json( rep ) );
    }

    json  j = { { "seed", params.seed }, { "n", n }, { "reports", std::move( reports ) } };

    emit( res, params.out / "index.json", j.dump( 2 ) + "\n" );

    return res;
}

//////////////////////////////////////////////////////////////////////////////
//
// khintchine
//
//////////////////////////////////////////////////////////////////////////////

CommandResult
run_khintchine ( const KhintchineParams &  params )
{
    check_common( params );

    if ( params.n_max < 1 || params.n_max > 14 )
        throw InvalidInput( "--n-max must lie in [1, 14]" );

    CommandResult  res;
    std::string    csv = "n,p,lower,upper,projection_norm,seed\n";

    for ( double  p : params.p )
        for ( int  n = 1; n <= params.n_max; ++n )
        {
            const auto  kc = measure_constants( n, p, make_budget( params ) );

            csv += fmt::format( "{},{},{},{},{},{}\n", n, format_number( p ),
                                format_number( kc.lower_embed ), format_number( kc.upper_embed ),
                                format_number( kc.projection_norm ), params.seed );

            if ( ! params.check )
                continue;

            if ( p == 2.0 && ( std::abs( kc.lower_embed - 1.0 ) > 1e-9 || std::abs( kc.upper_embed - 1.0 ) > 1e-9 ) )
                fail( res, fmt::format( "n = {}: p = 2 constants differ from 1", n ) );

            if ( p == 4.0 )
            {
                const double  predicted = std::pow( 3.0 - 2.0 / n, 0.25 );

                if ( std::abs( kc.upper_embed - predicted ) > 0.05 * predicted )
                    fail( res, fmt::format( "n = {}: upper constant {} vs fourth-moment value {}", n, kc.upper_embed, predicted ) );
            }
        }

    emit( res, params.out / "khintchine.csv", csv );

    return res;
}

//////////////////////////////////////////////////////////////////////////////
//
// suite
//
//////////////////////////////////////////////////////////////////////////////

namespace {

template < typename T >
void
take ( const json &                  cfg,
       const char *                  key,
       T &                           value,
       std::set< std::string > &     used )
{
    used.insert( key );

    if ( ! cfg.contains( key ) )
        return;

    try
    {
        value = cfg.at( key ).get< T >();
    }
    catch ( const json::exception &  e )
    {
        throw InvalidInput( fmt::format( "config key '{}': {}", key, e.what() ) );
    }
}

void
take_common ( const json &               cfg,
              CommonParams &             params,
              std::set< std::string > &  used )
{
    if ( cfg.contains( "p" ) && cfg.at( "p" ).is_number() )
    {
        params.p = { cfg.at( "p" ).get< double >() };
        used.insert( "p" );
    }
    else
        take( cfg, "p", params.p, used );

    take( cfg, "n",      params.n,      used );
    take( cfg, "seed",   params.seed,   used );
    take( cfg, "budget", params.budget, used );
    take( cfg, "window", params.window, used );
    take( cfg, "check",  params.check,  used );
}

void
reject_unknown ( const json &                     cfg,
                 const std::set< std::string > &  used,
                 const std::string &              where )
{
    for ( const auto &  [ key, value ] : cfg.items() )
        if ( ! used.count( key ) )
            throw InvalidInput( fmt::format( "{}: unknown config key '{}'", where, key ) );
}

std::vector< fs::path >
paths_of ( const std::vector< std::string > &  names,
           const fs::path &                    base )
{
    std::vector< fs::path >  out;

    for ( const auto &  s : names )
    {
        const fs::path  p( s );

        out.push_back( p.is_absolute() ? p : base / p );
    }

    return out;
}

CommandResult
run_experiment ( const json &          cfg,
                 const CommonParams &  defaults,
                 const fs::path &      base )
{
    std::set< std::string >  used = { "name", "command" };
    const auto               cmd  = cfg.at( "command" ).get< std::string >();
    const auto               name = cfg.at( "name" ).get< std::string >();
    const auto               where = "experiment '" + name + "'";

    const auto  run = [&] ( auto &  params, auto &&  extra, auto &&  runner )
    {
        static_cast< CommonParams & >( params ) = defaults;
        take_common( cfg, params, used );
        extra( params );
        reject_unknown( cfg, used, where );

        return runner( params );
    };

    if ( cmd == "norm" )
    {
        NormParams  p;

        return run( p, [&] ( NormParams &  q )
        {
            std::string  input;

            take( cfg, "input", input, used );
            take( cfg, "width", q.width, used );
            take( cfg, "band",  q.band,  used );

            if ( ! input.empty() )
                q.input = paths_of( { input }, base ).front();
        }, run_norm );
    }

    if ( cmd == "tridiag" )
    {
        TridiagParams  p;

        return run( p, [&] ( TridiagParams &  q )
        {
            std::vector< std::string >  mats;

            take( cfg, "matrices", mats, used );
            q.matrices = paths_of( mats, base );
        }, run_tridiag );
    }

    if ( cmd == "transfer-experiment" )
    {
        TransferParams  p;

        return run( p, [&] ( TransferParams &  q )
        {
            take( cfg, "count",      q.count,      used );
            take( cfg, "max_degree", q.max_degree, used );
            take( cfg, "plain_n",    q.plain_n,    used );
            take( cfg, "tolerance",  q.tolerance,  used );
            take( cfg, "svg",        q.svg,        used );
        }, run_transfer );
    }

    if ( cmd == "index" )
    {
        IndexParams  p;

        return run( p, [&] ( IndexParams &  q ) { take( cfg, "symbols", q.symbols, used ); }, run_index );
    }

    if ( cmd == "khintchine" )
    {
        KhintchineParams  p;

        return run( p, [&] ( KhintchineParams &  q ) { take( cfg, "n_max", q.n_max, used ); }, run_khintchine );
    }

    throw InvalidInput( fmt::format( "{}: unknown command '{}' (expected norm, tridiag, "
                                     "transfer-experiment, index or khintchine)", where, cmd ) );
}

std::string
relative_name ( const fs::path &  path,
                const fs::path &  root )
{
    return path.lexically_normal().lexically_relative( root.lexically_normal() ).generic_string();
}

}// namespace anonymous

CommandResult
run_suite ( const fs::path &  config,
            const fs::path &  out_override )
{
    json  cfg;

    try
    {
        cfg = json::parse( read_text( config ) );
    }
    catch ( const json::exception &  e )
    {
        throw InvalidInput( config.string() + ": " + e.what() );
    }

    if ( ! cfg.is_object() )
        throw InvalidInput( config.string() + ": config must be a JSON object" );

    const fs::path  base = config.parent_path();

    CommonParams             defaults;
    std::set< std::string >  used = { "experiments", "out" };
    std::string              out  = "suite-out";

    take_common( cfg, defaults, used );
    take( cfg, "out", out, used );
    reject_unknown( cfg, used, config.string() );

    const fs::path  root = ! out_override.empty() ? out_override
                         : fs::path( out ).is_absolute() ? fs::path( out ) : base / out;

    // experiments keyed by name so the run order never depends on file order
    std::map< std::string, json >  experiments;

    if ( cfg.contains( "experiments" ) )
    {
        if ( ! cfg.at( "experiments" ).is_array() )
            throw InvalidInput( "'experiments' must be an array" );

        for ( const auto &  e : cfg.at( "experiments" ) )
        {
            if ( ! e.is_object() || ! e.contains( "name" ) || ! e.contains( "command" ) ||
                 ! e.at( "name" ).is_string() || ! e.at( "command" ).is_string() )
                throw InvalidInput( "every experiment needs string fields 'name' and 'command'" );

            const auto  name = e.at( "name" ).get< std::string >();

            if ( name.empty() || name.find_first_of( "/\\" ) != std::string::npos || name == "." || name == ".." )
                throw InvalidInput( "experiment name '" + name + "' is not a plain directory name" );

            if ( ! experiments.emplace( name, e ).second )
                throw InvalidInput( "duplicate experiment name '" + name + "'" );
        }
    }

    CommandResult  suite;
    json           runs = json::array();

    suite.inputs.push_back( config );

    for ( const auto &  [ name, e ] : experiments )
    {
        CommonParams  defaults_here = defaults;

        defaults_here.out = root / name;

        auto  r = run_experiment( e, defaults_here, base );

        runs.push_back( { { "name", name }, { "command", e.at( "command" ) }, { "status", r.status }, { "failures", r.failures } } );

        if ( r.status != exit_code::ok )
        {
            suite.status = exit_code::check_failed;

            for ( const auto &  f : r.failures )
                suite.failures.push_back( name + ": " + f );
        }

        suite.inputs.insert( suite.inputs.end(), r.inputs.begin(), r.inputs.end() );
        suite.outputs.insert( suite.outputs.end(), r.outputs.begin(), r.outputs.end() );
    }

    const auto  listing = [&] ( const std::vector< fs::path > &  files, const fs::path &  rel_to )
    {
        std::map< std::string, std::string >  sorted;

        for ( const auto &  f : files )
            sorted[ relative_name( f, rel_to ) ] = sha256_file( f );

        json  arr = json::array();

        for ( const auto &  [ path, hash ] : sorted )
            arr.push_back( { { "path", path }, { "sha256", hash } } );

        return arr;
    };

    json  manifest = { { "seed",        defaults.seed },
                       { "budget",      defaults.budget },
                       { "inputs",      listing( suite.inputs, base ) },
                       { "experiments", std::move( runs ) },
                       { "outputs",     listing( suite.outputs, root ) } };

    write_text( root / "manifest.json", manifest.dump( 2 ) + "\n" );
    suite.outputs.push_back( root / "manifest.json" );

    return suite;
}

}// namespace calkin
