#include <gtest/gtest.h>

#include "calkin/transfer.hpp"
#include "oracles.hpp"

using namespace calkin;

namespace {

const auto  w     = LaurentPolynomial::monomial( 1 );
const auto  w_inv = LaurentPolynomial::monomial( -1 );

Budget
quick ()
{
    return Budget{ 200, 3, 1 };
}

BlockBandedOperator< cplx >
random_op ( const SpaceSpec &   s,
            Index               band,
            std::mt19937_64 &   rng )
{
    BlockBandedOperator< cplx >  t( s, band );

    for ( Index j = 0; j < s.num_blocks(); ++j )
        for ( Index i = 0; i < s.num_blocks(); ++i )
            if ( t.in_band( i, j ) )
                t.set_block( i, j, oracle::random_matrix( rng, s.block_size( i ), s.block_size( j ) ) );

    return t;
}

}

TEST( Psi, UnitalAndExactlyMultiplicative )
{
    const SpaceSpec  s( 2.0, { 0, 2, 3, 7, 9 } );

    for ( double  p : { 1.5, 4.0 } )
        EXPECT_EQ( psi( BlockBandedOperator< cplx >::identity( s ), p ).assemble(), MatrixXc::Identity( 9, 9 ) );

    std::mt19937_64  rng( 51 );
    const auto       a = random_op( s, 1, rng );
    const auto       b = random_op( s, 1, rng );

    const auto  lhs = psi( compose( a, b ), 3.0 );
    const auto  rhs = compose( psi( a, 3.0 ), psi( b, 3.0 ) );

    EXPECT_EQ( lhs.space(), rhs.space() );
    EXPECT_EQ( lhs.assemble(), rhs.assemble() );
    EXPECT_DOUBLE_EQ( lhs.space().p(), 3.0 );
}

TEST( Psi, BackwardShiftBetweenOneAndThree )
{
    const Index  n    = 64;
    const auto   plan = choose_cuts( std::vector< MatrixXc >{ forward_shift( n ), backward_shift( n ) }, n );
    const auto   g    = compress( backward_shift( n ), plan );

    EXPECT_EQ( g.residual_norm, 0.0 );
    EXPECT_EQ( g.gamma.assemble(), backward_shift( n ) );

    const auto  e = estimate_norm( psi( g.gamma, 4.0 ), quick() );

    EXPECT_GE( e.lower, 1.0 - 1e-12 );
    EXPECT_LE( e.lower, 3.0 );
}

TEST( EssentialNormProxy, FiniteRankVanishesIdentityIsOne )
{
    const SpaceSpec  s = SpaceSpec::uniform( 3.0, 20, 4 );

    BlockBandedOperator< cplx >  f( s, 1 );

    f.set_block( 0, 0, MatrixXc::Constant( 4, 4, 1.0 ) );
    EXPECT_EQ( essential_norm_proxy( f, 1, quick() ), 0.0 );

    const auto  id = BlockBandedOperator< cplx >::identity( s );

    for ( Index win = 0; win < s.num_blocks(); ++win )
        EXPECT_NEAR( essential_norm_proxy( id, win, quick() ), 1.0, 1e-12 );

    EXPECT_THROW( essential_norm_proxy( id, s.num_blocks(), quick() ), InvalidInput );
}

TEST( EssentialNormProxy, HilbertToeplitzApproachesSup )
{
    const auto  f = LaurentPolynomial::parse( "-2:0.5,0; -1:1,0; 0:0.3,0.2; 1:-0.7,0.1" );

    double  prev_err = std::numeric_limits< double >::infinity();

    for ( Index n : { 64, 256 } )
    {
        const auto    t   = toeplitz( f, SpaceSpec::uniform( 2.0, n, 4 ) );
        const double  v   = essential_norm_proxy( t, t.num_blocks() / 2, quick() );
        const double  err = std::abs( v - f.sup_circle() );

        EXPECT_LE( v, f.sup_circle() + 1e-9 );
        EXPECT_LT( err, prev_err );
        prev_err = err;
    }

    EXPECT_LT( prev_err, 0.01 * f.sup_circle() );
}

TEST( TailNormProfile, NonIncreasingInWindow )
{
    std::mt19937_64  rng( 52 );

    for ( double  p : { 1.5, 3.0 } )
    {
        const auto  t       = random_op( SpaceSpec::uniform( p, 30, 3 ), 1, rng );
        const auto  profile = tail_norm_profile( t, { 0, 1, 2, 4, 6, 8 }, quick() );

        for ( size_t k = 1; k < profile.size(); ++k )
            EXPECT_LE( profile[k], profile[k - 1] );
    }
}

TEST( WindowBlocks, CountsWholeBlocksInsideFraction )
{
    const SpaceSpec  s( 2.0, { 0, 3, 5, 10, 16, 20 } );

    EXPECT_EQ( window_blocks( s, 0.0 ), 0 );
    EXPECT_EQ( window_blocks( s, 0.25 ), 2 );
    EXPECT_EQ( window_blocks( s, 0.5 ), 3 );
    EXPECT_EQ( window_blocks( s, 0.99 ), 4 );
    EXPECT_THROW( window_blocks( s, 1.0 ), InvalidInput );
}

TEST( CalculusExperiment, ConstantSymbol )
{
    ExperimentOptions  opts;

    opts.n      = 128;
    opts.budget = quick();

    const auto  ex = run_calculus_experiment( LaurentPolynomial::constant( 1.0 ), opts );

    EXPECT_NEAR( ex.sup_circle, 1.0, 1e-15 );
    EXPECT_NEAR( ex.transferred_norm.lower, 1.0, 1e-12 );
    ASSERT_TRUE( ex.index_expected.has_value() );
    EXPECT_EQ( *ex.index_expected, 0 );
    EXPECT_TRUE( ex.index_observed.converged );
    EXPECT_EQ( ex.index_observed.value, 0 );
}

TEST( CalculusExperiment, BackwardShiftIndexOne )
{
    ExperimentOptions  opts;

    opts.n      = 256;
    opts.budget = quick();

    const auto  ex = run_calculus_experiment( w_inv, opts );

    EXPECT_NEAR( ex.sup_circle, 1.0, 1e-12 );
    EXPECT_LE( ex.transferred_norm.lower, 3.0 + 0.05 );
    EXPECT_GE( ex.transferred_norm.lower, 1.0 - 1e-9 );
    ASSERT_TRUE( ex.index_expected.has_value() );
    EXPECT_EQ( *ex.index_expected, 1 );
    EXPECT_TRUE( ex.index_observed.converged );
    EXPECT_EQ( ex.index_observed.value, 1 );
}

TEST( CalculusExperiment, CosineSymbolAndContrast )
{
    ExperimentOptions  opts;

    opts.n      = 256;
    opts.budget = quick();

    const auto  ex = run_calculus_experiment( w + w_inv, opts );

    EXPECT_NEAR( ex.sup_circle, 2.0, 1e-12 );
    EXPECT_LE( ex.transferred_norm.lower, 6.0 + 0.05 );
    EXPECT_GE( ex.plain_shift_norm.lower, 2.0 - 0.02 );
    EXPECT_FALSE( ex.index_expected.has_value() );
}

TEST( CalculusExperiment, RejectsBadInput )
{
    ExperimentOptions  opts;

    opts.n = 32;
    EXPECT_THROW( run_calculus_experiment( LaurentPolynomial(), opts ), InvalidInput );
    EXPECT_THROW( run_calculus_experiment( LaurentPolynomial::monomial( 9 ), opts ), InvalidInput );

    opts.p = 1.0;
    EXPECT_THROW( run_calculus_experiment( w, opts ), InvalidInput );
}

TEST( CalculusExperiment, WindowStabilityUnderDoubling )
{
    const auto  f = LaurentPolynomial::parse( "-1:0.4,0.1; 0:0.2,0; 2:-0.3,0.2" );

    ExperimentOptions  opts;

    opts.budget = quick();
    opts.n      = 256;

    const double  a = run_calculus_experiment( f, opts ).transferred_norm.lower;

    opts.n = 512;

    const double  b = run_calculus_experiment( f, opts ).transferred_norm.lower;

    EXPECT_LT( std::abs( a - b ), 0.02 * b );
}

TEST( PhiPipeline, ConstantHasRatioOne )
{
    ExperimentOptions  opts;

    opts.n      = 64;
    opts.budget = quick();

    const auto  r = run_phi_pipeline( { LaurentPolynomial::constant( 1.0 ) }, opts );

    ASSERT_EQ( r.size(), 1u );
    EXPECT_NEAR( r[0].ratio_lower, 1.0, 1e-12 );
    EXPECT_NEAR( r[0].ratio_upper, 1.0, 1e-12 );
}

TEST( PhiPipeline, ShiftsAndCosineWithinThree )
{
    ExperimentOptions  opts;

    opts.n      = 512;
    opts.budget = quick();

    const auto  r = run_phi_pipeline( { w_inv, w, w + w_inv }, opts );

    ASSERT_EQ( r.size(), 3u );

    for ( const auto &  t : r )
    {
        EXPECT_EQ( t.band, 1 );
        EXPECT_LE( t.ratio_upper, 3.0 + 0.05 );
        EXPECT_TRUE( t.within_bounds );

        // finite-scale form of the distortion bound
        EXPECT_LE( t.target_norm_p.lower, 3.0 * t.source_norm2.upper + 1e-6 );
        EXPECT_GE( t.target_norm_p.upper, t.source_norm2.lower / 3.0 - 1e-6 );
    }
}

TEST( HomomorphismDefect, CosineFromShiftsWithinBudget )
{
    const Index  n    = 128;
    const auto   u    = forward_shift( n );
    const auto   us   = backward_shift( n );
    const auto   cosm = toeplitz_matrix( w + w_inv, n );
    const auto   plan = choose_cuts( std::vector< MatrixXc >{ u, us, cosm }, n );

    // additivity of the compression: Gamma(U + U*) = Gamma(U) + Gamma(U*)
    const auto  sum = compress( u, plan ).gamma + compress( us, plan ).gamma;

    EXPECT_LT( ( psi( sum, 4.0 ).assemble() - psi( compress( cosm, plan ).gamma, 4.0 ).assemble() ).norm(), 1e-14 );

    const auto  d = homomorphism_defect( u, us, plan );

    EXPECT_TRUE( d.within );
    EXPECT_LE( d.defect, d.budget + 1e-12 );
}

TEST( RandomSymbol, NormalizedAndDeterministic )
{
    std::mt19937_64  a( 7 ), b( 7 );

    for ( int k = 0; k < 5; ++k )
    {
        const auto  f = random_symbol( a, 16 );
        const auto  g = random_symbol( b, 16 );

        EXPECT_EQ( f, g );
        EXPECT_NEAR( f.sup_circle(), 1.0, 1e-12 );
        EXPECT_LE( f.degree(), 16 );
        EXPECT_GE( f.degree(), 1 );
    }

    EXPECT_THROW( random_symbol( a, 0 ), InvalidInput );
}
