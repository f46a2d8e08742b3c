//
// calkinlab: command line front end for the experiments in libcalkinlab
//

#include <iostream>

#include <CLI11.hpp>

#include "calkin/commands.hpp"
#include "calkin/io.hpp"

using namespace calkin;

namespace {

void
add_common ( CLI::App *      cmd,
             CommonParams &  params )
{
    cmd->add_option( "--p",      params.p,      "exponent(s) p in (1, inf)" )->delimiter( ',' );
    cmd->add_option( "--n",      params.n,      "truncation size N (0 = command default)" );
    cmd->add_option( "--seed",   params.seed,   "random seed" );
    cmd->add_option( "--budget", params.budget, "iterations per restart" );
    cmd->add_option( "--window", params.window, "tail window as a fraction of N" );
    cmd->add_option( "--out",    params.out,    "output directory" );
    cmd->add_flag(   "--check",  params.check,  "exit 1 when a built-in assertion fails" );
}

int
report ( const CommandResult &  res )
{
    for ( const auto &  f : res.outputs )
        std::cout << "wrote " << f.string() << '\n';

    for ( const auto &  f : res.failures )
        std::cerr << "check failed: " << f << '\n';

    return res.status;
}

}// namespace anonymous

int
main ( int argc, char ** argv )
{
    CLI::App  app{ "block-banded operator experiments on mixed l^p(l^2) spaces" };

    app.require_subcommand( 1 );

    NormParams        norm;
    TridiagParams     tri;
    TransferParams    transfer;
    IndexParams       index;
    KhintchineParams  khin;
    std::string       config;
    std::string       suite_out;

    index.p    = { 2.0 };
    khin.p     = { 2.0, 4.0 };

    auto *  c_norm = app.add_subcommand( "norm", "estimate ||T|| on X_p for a block banded operator" );
    add_common( c_norm, norm );
    c_norm->add_option( "--input", norm.input, "operator JSON header or dense CSV (random operator if omitted)" );
    c_norm->add_option( "--width", norm.width, "block width for dense or random input" );
    c_norm->add_option( "--band",  norm.band,  "block band for dense or random input" );

    auto *  c_tri = app.add_subcommand( "tridiag", "choose cuts for a matrix family and record column residuals" );
    add_common( c_tri, tri );
    c_tri->add_option( "--matrix", tri.matrices, "dense CSV matrix (repeatable; built-in family if omitted)" );

    auto *  c_transfer = app.add_subcommand( "transfer-experiment", "transferred tail norms of random Laurent polynomials" );
    add_common( c_transfer, transfer );
    c_transfer->add_option( "--count",      transfer.count,      "number of random polynomials" );
    c_transfer->add_option( "--max-degree", transfer.max_degree, "largest symbol degree" );
    c_transfer->add_option( "--plain-n",    transfer.plain_n,    "size of the plain l^p section" );
    c_transfer->add_option( "--tolerance",  transfer.tolerance,  "slack on the transferred bounds" );
    c_transfer->add_flag(   "--svg",        transfer.svg,        "also write transfer.svg" );

    auto *  c_index = app.add_subcommand( "index", "winding number against the truncation index" );
    add_common( c_index, index );
    c_index->add_option( "--symbol", index.symbols, "Laurent polynomial \"n:re,im; ...\" (repeatable)" );

    auto *  c_khin = app.add_subcommand( "khintchine", "Rademacher embedding constants for n = 1..n-max" );
    add_common( c_khin, khin );
    c_khin->add_option( "--n-max", khin.n_max, "largest number of Rademacher functions" );

    auto *  c_suite = app.add_subcommand( "suite", "run every experiment of a JSON config" );
    c_suite->add_option( "--config", config, "suite configuration (JSON)" )->required();
    c_suite->add_option( "--out", suite_out, "output directory (overrides the config)" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp &  e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError &  e )
    {
        app.exit( e );
        return exit_code::invalid_input;
    }

    try
    {
        if ( c_norm->parsed() )     return report( run_norm( norm ) );
        if ( c_tri->parsed() )      return report( run_tridiag( tri ) );
        if ( c_transfer->parsed() ) return report( run_transfer( transfer ) );
        if ( c_index->parsed() )    return report( run_index( index ) );
        if ( c_khin->parsed() )     return report( run_khintchine( khin ) );
        if ( c_suite->parsed() )    return report( run_suite( config, suite_out ) );
    }
    catch ( const InvalidInput &  e )
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_code::invalid_input;
    }
    catch ( const std::exception &  e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::invalid_input;
    }

    return exit_code::ok;
}
