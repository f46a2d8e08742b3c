#include <gtest/gtest.h>

#include "calkin/fredholm.hpp"
#include "calkin/laurent.hpp"
#include "oracles.hpp"

using namespace calkin;

namespace {

const auto  w     = LaurentPolynomial::monomial( 1 );
const auto  w_inv = LaurentPolynomial::monomial( -1 );

// random symbol whose zeros of w^d f(w) stay away from the circle
LaurentPolynomial
random_invertible ( std::mt19937_64 &  rng,
                    int                max_degree )
{
    std::uniform_int_distribution< int >  deg( 0, max_degree );
    std::normal_distribution< double >    g;

    for ( ;; )
    {
        const int              d = deg( rng );
        std::map< int, cplx >  c;

        for ( int k = -d; k <= d; ++k )
        {
            const double  re = g( rng );
            const double  im = g( rng );

            c[k] = cplx( re, im );
        }

        LaurentPolynomial  f( c );

        if ( f.min_circle() > 0.2 * f.sup_circle() )
            return f;
    }
}

}

TEST( Laurent, ParseEvaluateAndPrint )
{
    const auto  f = LaurentPolynomial::parse( "-1:1,0; 0:3,0; 1:1,0" );

    EXPECT_EQ( f.degree(), 1 );
    EXPECT_EQ( f.coeff( 0 ), cplx( 3.0 ) );
    EXPECT_EQ( f.coeff( 5 ), cplx( 0.0 ) );
    EXPECT_NEAR( std::abs( f( cplx( 1.0 ) ) - 5.0 ), 0.0, 1e-15 );
    EXPECT_NEAR( f.sup_circle(), 5.0, 1e-12 );
    EXPECT_NEAR( f.min_circle(), 1.0, 1e-12 );
    EXPECT_EQ( LaurentPolynomial::parse( f.to_string() ), f );
    EXPECT_DOUBLE_EQ( f.coefficient_l1(), 5.0 );
    EXPECT_DOUBLE_EQ( f.derivative_bound(), 2.0 );

    EXPECT_THROW( LaurentPolynomial::parse( "1:abc" ), InvalidInput );
    EXPECT_THROW( LaurentPolynomial::parse( "x" ), InvalidInput );
}

TEST( Laurent, AlgebraMatchesPointwise )
{
    const auto  f = LaurentPolynomial::parse( "-2:1,1; 1:0.5,0" );
    const auto  g = LaurentPolynomial::parse( "-1:2,0; 0:0,-1; 3:1,0" );

    for ( double  th : { 0.0, 0.7, 2.1, 4.4 } )
    {
        const cplx  z = std::polar( 1.0, th );

        EXPECT_LT( std::abs( ( f * g )( z ) - f( z ) * g( z ) ), 1e-13 );
        EXPECT_LT( std::abs( ( f + g )( z ) - f( z ) - g( z ) ), 1e-13 );
        EXPECT_LT( std::abs( ( f - g )( z ) - f( z ) + g( z ) ), 1e-13 );
        EXPECT_LT( std::abs( interpolate( f, g, 0.25 )( z ) - 0.75 * f( z ) - 0.25 * g( z ) ), 1e-13 );
    }

    EXPECT_TRUE( ( f - f ).is_zero() );
}

TEST( Laurent, ToeplitzMatrixEntries )
{
    const auto  f = LaurentPolynomial::parse( "-2:1,0; 0:2,0; 1:0,3" );

    EXPECT_EQ( toeplitz_matrix( f, 7 ), oracle::toeplitz( f.coefficients(), 7 ) );
}

TEST( Winding, Monomials )
{
    EXPECT_EQ( winding( LaurentPolynomial::constant( 1.0 ) ), 0 );
    EXPECT_EQ( winding( w ), 1 );
    EXPECT_EQ( winding( w_inv ), -1 );
    EXPECT_EQ( winding( LaurentPolynomial::monomial( 3, cplx( 0, 2 ) ) ), 3 );
    EXPECT_THROW( winding( w + w_inv ), NotInvertible );
    EXPECT_THROW( winding( LaurentPolynomial() ), NotInvertible );
}

TEST( Winding, AgreesWithRootCount )
{
    std::mt19937_64  rng( 61 );

    for ( int trial = 0; trial < 40; ++trial )
    {
        const auto  f = random_invertible( rng, 6 );

        EXPECT_EQ( winding( f ), oracle::winding_by_roots( f.coefficients() ) ) << f.to_string();
    }
}

TEST( Winding, AdditiveAndScaleInvariant )
{
    std::mt19937_64  rng( 62 );

    for ( int trial = 0; trial < 20; ++trial )
    {
        const auto  f = random_invertible( rng, 4 );
        const auto  g = random_invertible( rng, 4 );

        EXPECT_EQ( winding( f * g ), winding( f ) + winding( g ) );
        EXPECT_EQ( winding( cplx( -0.3, 2.0 ) * f ), winding( f ) );
    }
}

TEST( Winding, NearlyTangentSymbolRefinesGrid )
{
    // w^40 - 0.99 winds 40 times with |f| down to 0.01
    const auto  f = LaurentPolynomial::monomial( 40 ) - LaurentPolynomial::constant( 0.99 );

    EXPECT_EQ( winding( f, 64 ), 40 );
}

TEST( TruncationIndex, IdentityAndBackwardShift )
{
    const auto  id = truncation_index( BlockBandedOperator< cplx >::identity( SpaceSpec::uniform( 2.0, 20, 2 ) ) );

    EXPECT_TRUE( id.converged );
    EXPECT_EQ( id.value, 0 );

    const auto  us = truncation_index( toeplitz( w_inv, SpaceSpec::unit( 2.0, 32 ) ) );

    EXPECT_TRUE( us.converged );
    EXPECT_EQ( us.kernel_dim, 1 );
    EXPECT_EQ( us.cokernel_dim, 0 );
    EXPECT_EQ( us.value, 1 );
    EXPECT_GE( us.gap, 100.0 );
}

TEST( TruncationIndex, SquareSymbolAgreesWithWinding )
{
    const auto  f   = LaurentPolynomial::monomial( 2 );
    const auto  rep = index_report( f, 128 );

    ASSERT_TRUE( rep.winding_index.has_value() );
    EXPECT_EQ( *rep.winding_index, -2 );
    EXPECT_EQ( rep.truncation.value, -2 );
    EXPECT_TRUE( rep.agree );
}

TEST( TruncationIndex, RandomSymbolsMatchWinding )
{
    std::mt19937_64  rng( 63 );
    int              checked = 0;

    while ( checked < 15 )
    {
        const auto  f = random_invertible( rng, 3 );

        if ( std::abs( winding( f ) ) > 3 )
            continue;

        const auto  rep = index_report( f, 96 );

        if ( rep.truncation.converged )
        {
            EXPECT_EQ( rep.truncation.value, -winding( f ) ) << f.to_string();
            ++checked;
        }
    }
}

TEST( TruncationIndex, VanishingSymbolHasNoWindingIndex )
{
    const auto  rep = index_report( w + w_inv, 64 );

    EXPECT_FALSE( rep.winding_index.has_value() );
    EXPECT_FALSE( rep.agree );
}

TEST( PathConstancy, ScalingPathKeepsIndexOne )
{
    const auto  pi = path_index_constancy( { w_inv, 2.0 * w_inv, 16 } );

    EXPECT_TRUE( pi.constant );
    ASSERT_EQ( pi.indices.size(), 17u );

    for ( int v : pi.indices )
        EXPECT_EQ( v, 1 );
}

TEST( PathConstancy, OutsideTheDiskStaysZero )
{
    const auto  start = w - LaurentPolynomial::constant( 2.0 );
    const auto  end   = w - LaurentPolynomial::constant( 3.0 );
    const auto  pi    = path_index_constancy( { start, end, 16 } );

    EXPECT_TRUE( pi.constant );

    for ( int v : pi.indices )
        EXPECT_EQ( v, 0 );
}

TEST( PathConstancy, ShiftToBackwardShiftIsRejectedAtMidpoint )
{
    const SymbolPath  path{ w, w_inv, 10 };

    // the midpoint symbol (w + w^-1) / 2 vanishes at w = i
    EXPECT_NEAR( std::abs( path.at( 5 )( cplx( 0, 1 ) ) ), 0.0, 1e-15 );

    try
    {
        validate_path( path );
        FAIL() << "path through a vanishing symbol was accepted";
    }
    catch ( const PathRejected &  e )
    {
        EXPECT_EQ( e.step, 5 );
        EXPECT_TRUE( e.vanishes );
        EXPECT_DOUBLE_EQ( e.t, 0.5 );
    }

    EXPECT_THROW( path_index_constancy( path ), PathRejected );
}

TEST( PathConstancy, AcceptedRandomPathsAreConstant )
{
    std::mt19937_64  rng( 64 );
    int              accepted = 0;

    for ( int trial = 0; trial < 200 && accepted < 20; ++trial )
    {
        const auto  f = random_invertible( rng, 3 );
        const auto  g = f + cplx( 0.05 ) * random_invertible( rng, 3 );

        try
        {
            const auto  pi = path_index_constancy( { f, g, 32 } );

            EXPECT_TRUE( pi.constant );
            ++accepted;
        }
        catch ( const PathRejected & )
        {
        }
    }

    EXPECT_GE( accepted, 10 );
}
