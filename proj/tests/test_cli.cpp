#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "calkin/commands.hpp"
#include "calkin/io.hpp"
#include "oracles.hpp"

using namespace calkin;
namespace fs = std::filesystem;

namespace {

fs::path
scratch ( const std::string &  name )
{
    const fs::path  d = fs::temp_directory_path() / ( "calkinlab-test-" + name );

    fs::remove_all( d );
    fs::create_directories( d );

    return d;
}

fs::path
write_config ( const fs::path &  dir, const json &  cfg )
{
    const fs::path  f = dir / "suite.json";

    write_text( f, cfg.dump( 2 ) );

    return f;
}

int
run_exe ( const std::string &  args )
{
    const int  rc = std::system( ( std::string( CALKINLAB_EXE ) + " " + args + " > /dev/null 2>&1" ).c_str() );

    return WIFEXITED( rc ) ? WEXITSTATUS( rc ) : -1;
}

}

TEST( Io, MatrixAndVectorRoundTrip )
{
    std::mt19937_64  rng( 81 );
    const auto       dir = scratch( "io" );
    const MatrixXc   m   = oracle::random_matrix( rng, 5, 5 );
    const VectorXc   v   = oracle::random_vector( rng, 6 );

    write_matrix_csv( dir / "m.csv", m );
    write_vector_csv( dir / "v.csv", v );

    EXPECT_LT( ( read_matrix_csv( dir / "m.csv" ) - m ).norm(), 1e-11 * m.norm() );
    EXPECT_LT( ( read_vector_csv( dir / "v.csv" ) - v ).norm(), 1e-11 * v.norm() );

    // a real matrix may be given with one column per entry
    write_text( dir / "r.csv", "1,2\n3,4\n" );

    const MatrixXc  r = read_matrix_csv( dir / "r.csv" );

    EXPECT_EQ( r( 1, 0 ), cplx( 3.0 ) );
    EXPECT_EQ( r.cols(), 2 );

    write_text( dir / "bad.csv", "1,2\n3\n" );
    EXPECT_THROW( read_matrix_csv( dir / "bad.csv" ), InvalidInput );
}

TEST( Io, OperatorRoundTrip )
{
    std::mt19937_64  rng( 82 );
    const auto       dir = scratch( "op" );
    const SpaceSpec  s( 3.0, { 0, 2, 5, 6 } );
    const auto       t = from_dense( oracle::random_matrix( rng, 6, 6 ), s, 1 ).op;

    save_operator( t, dir / "op.json" );

    const auto  back = load_operator( dir / "op.json" );

    EXPECT_EQ( back.space(), s );
    EXPECT_EQ( back.band(), 1 );
    EXPECT_LT( ( back.assemble() - t.assemble() ).norm(), 1e-11 );
}

TEST( Io, SpaceJsonAndHash )
{
    const SpaceSpec  s( 1.5, { 0, 1, 4 } );

    EXPECT_EQ( space_from_json( to_json( s ) ), s );
    EXPECT_THROW( space_from_json( json{ { "p", 0.5 }, { "cuts", { 0, 1 } } } ), InvalidInput );

    const auto  dir = scratch( "hash" );

    write_text( dir / "abc.txt", "abc" );
    EXPECT_EQ( sha256_file( dir / "abc.txt" ), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad" );
}

TEST( Commands, RejectInvalidParameters )
{
    KhintchineParams  k;

    k.out = scratch( "bad-params" );
    k.p   = { 1.0 };
    EXPECT_THROW( run_khintchine( k ), InvalidInput );

    k.p      = { 2.0 };
    k.window = 1.5;
    EXPECT_THROW( run_khintchine( k ), InvalidInput );
}

TEST( Commands, IndexAndKhintchinePassTheirChecks )
{
    IndexParams  ip;

    ip.out   = scratch( "index" );
    ip.p     = { 2.0 };
    ip.check = true;

    const auto  ir = run_index( ip );

    EXPECT_EQ( ir.status, exit_code::ok );
    EXPECT_TRUE( fs::exists( ip.out / "index.json" ) );

    KhintchineParams  kp;

    kp.out   = scratch( "khintchine" );
    kp.p     = { 2.0, 4.0 };
    kp.n_max = 6;
    kp.check = true;

    const auto  kr = run_khintchine( kp );

    EXPECT_EQ( kr.status, exit_code::ok );
    EXPECT_TRUE( fs::exists( kp.out / "khintchine.csv" ) );
}

TEST( Suite, EmptyConfigWritesEmptyManifest )
{
    const auto  dir = scratch( "suite-empty" );
    const auto  cfg = write_config( dir, json{ { "seed", 3 }, { "experiments", json::array() } } );
    const auto  r   = run_suite( cfg, dir / "out" );

    EXPECT_EQ( r.status, exit_code::ok );

    const auto  m = json::parse( read_text( dir / "out" / "manifest.json" ) );

    EXPECT_EQ( m.at( "seed" ), 3 );
    EXPECT_TRUE( m.at( "experiments" ).empty() );
    EXPECT_TRUE( m.at( "outputs" ).empty() );
    ASSERT_EQ( m.at( "inputs" ).size(), 1u );
    EXPECT_EQ( m.at( "inputs" )[0].at( "sha256" ), sha256_file( cfg ) );
}

TEST( Suite, RejectsMalformedConfigs )
{
    const auto  dir = scratch( "suite-bad" );

    EXPECT_THROW( run_suite( write_config( dir, json{ { "colour", "red" } } ) ), InvalidInput );

    EXPECT_THROW( run_suite( write_config( dir, json{ { "experiments", {
        { { "name", "a" }, { "command", "index" } },
        { { "name", "a" }, { "command", "index" } } } } } ) ), InvalidInput );

    EXPECT_THROW( run_suite( write_config( dir, json{ { "experiments", {
        { { "name", "a" }, { "command", "nope" } } } } } ) ), InvalidInput );

    EXPECT_THROW( run_suite( write_config( dir, json{ { "experiments", {
        { { "name", "a" }, { "command", "index" }, { "typo", 1 } } } } } ) ), InvalidInput );

    EXPECT_THROW( run_suite( write_config( dir, json{ { "p", { 0.5 } }, { "experiments", {
        { { "name", "a" }, { "command", "khintchine" } } } } } ) ), InvalidInput );

    write_text( dir / "broken.json", "{ not json" );
    EXPECT_THROW( run_suite( dir / "broken.json" ), InvalidInput );
}

TEST( Suite, RerunIsByteIdentical )
{
    const auto  dir = scratch( "suite-rerun" );
    const json  cfg = { { "seed", 5 }, { "budget", 100 }, { "experiments", {
        { { "name", "kh" }, { "command", "khintchine" }, { "n_max", 5 }, { "p", { 2.0, 3.0 } } },
        { { "name", "ix" }, { "command", "index" }, { "n", 48 }, { "p", { 2.0 } } },
        { { "name", "nm" }, { "command", "norm" }, { "n", 12 }, { "p", { 3.0 } } } } } };
    const auto  file = write_config( dir, cfg );

    run_suite( file, dir / "a" );
    run_suite( file, dir / "b" );

    const auto  ma = json::parse( read_text( dir / "a" / "manifest.json" ) );
    const auto  mb = json::parse( read_text( dir / "b" / "manifest.json" ) );

    ASSERT_FALSE( ma.at( "outputs" ).empty() );
    EXPECT_EQ( ma, mb );
    EXPECT_EQ( ma.at( "experiments" )[0].at( "name" ), "ix" );

    for ( const auto &  o : ma.at( "outputs" ) )
    {
        const auto  rel = o.at( "path" ).get< std::string >();

        EXPECT_EQ( read_text( dir / "a" / rel ), read_text( dir / "b" / rel ) ) << rel;
        EXPECT_EQ( o.at( "sha256" ).get< std::string >().size(), 64u );
    }
}

TEST( Executable, ExitCodes )
{
    const auto  dir = scratch( "exe" );

    EXPECT_EQ( run_exe( "khintchine --n-max 3 --check --out " + ( dir / "k" ).string() ), 0 );
    EXPECT_EQ( run_exe( "khintchine --p 0.5 --out " + ( dir / "k" ).string() ), 2 );
    EXPECT_EQ( run_exe( "frobnicate" ), 2 );
    EXPECT_EQ( run_exe( "suite --config " + ( dir / "missing.json" ).string() ), 2 );
}
