#include "calkin/transfer.hpp"

#include <cmath>
#include <numbers>

namespace calkin {

Index
window_blocks ( const SpaceSpec &  space,
                const double       fraction )
{
    if ( ! ( fraction >= 0.0 ) || fraction >= 1.0 )
        throw InvalidInput( "window fraction must lie in [0, 1)" );

    const auto  limit = Index( std::floor( fraction * double( space.dim() ) ) );
    Index       w     = 0;

    while ( w < space.num_blocks() && space.block_end( w ) <= limit )
        ++w;

    return std::min( w, space.num_blocks() - 1 );
}

std::vector< VectorXc >
plane_wave_seeds ( const LaurentPolynomial &  f,
                   const Index                dim )
{
    constexpr int  grid = 4096;

    double  theta = 0.0;
    double  best  = -1.0;

    for ( int  k = 0; k < grid; ++k )
    {
        const double  th = 2.0 * std::numbers::pi * k / grid;
        const double  v  = std::abs( f.at_angle( th ) );

        if ( v > best )
        {
            best  = v;
            theta = th;
        }
    }

    // (T x)_i = f(e^{-i theta}) x_i away from the ends for x_j = e^{-i theta j}
    VectorXc  flat( dim ), hann( dim );

    for ( Index j = 0; j < dim; ++j )
    {
        const cplx  phase = std::polar( 1.0, -theta * double( j ) );

        flat( j ) = phase;
        hann( j ) = phase * std::pow( std::sin( std::numbers::pi * ( double( j ) + 0.5 ) / double( dim ) ), 2 );
    }

    return { flat, hann };
}

PlanExhausted::PlanExhausted ( CutPlan  partial )
        : Error( "cut plan exhausted before every family member was certified" )
        , plan( std::move( partial ) )
{}

LaurentPolynomial
random_symbol ( std::mt19937_64 &  rng,
                const int          max_degree )
{
    if ( max_degree < 1 )
        throw InvalidInput( "random symbol needs max_degree >= 1" );

    std::uniform_int_distribution< int >  pick( 1, max_degree );
    std::normal_distribution< double >    normal;

    const int              d = pick( rng );
    std::map< int, cplx >  c;

    for ( int k = -d; k <= d; ++k )
    {
        const double  re = normal( rng );
        const double  im = normal( rng );

        c[k] = cplx( re, im );
    }

    LaurentPolynomial  f( c );

    return ( 1.0 / f.sup_circle() ) * f;
}

MatrixXc
forward_shift ( const Index  n )
{
    return toeplitz_matrix( LaurentPolynomial::monomial( 1 ), n );
}

MatrixXc
backward_shift ( const Index  n )
{
    return toeplitz_matrix( LaurentPolynomial::monomial( -1 ), n );
}

namespace {

void
check_options ( const ExperimentOptions &  opts )
{
    if ( ! ( opts.p > 1.0 ) || ! std::isfinite( opts.p ) )
        throw InvalidInput( "exponent p must lie in (1, inf)" );

    if ( opts.n < 4 )
        throw InvalidInput( "truncation N too small" );
}

std::vector< VectorXc >
tail_seeds ( const LaurentPolynomial &  f,
             const SpaceSpec &          space,
             const Index                window )
{
    const Index  dim = space.dim() - space.block_begin( window );

    return plane_wave_seeds( f, dim );
}

}// namespace anonymous

CalculusExperiment
run_calculus_experiment ( const LaurentPolynomial &  f,
                          const ExperimentOptions &  opts )
{
    check_options( opts );

    if ( f.is_zero() )
        throw InvalidInput( "calculus experiment needs a nonzero symbol" );

    if ( 4 * f.degree() >= opts.n )
        throw InvalidInput( "truncation N too small for the symbol degree" );

    CalculusExperiment  ex;

    ex.symbol     = f;
    ex.sup_circle = f.sup_circle( 4096 );

    const MatrixXc                 tf     = toeplitz_matrix( f, opts.n );
    const std::vector< MatrixXc >  family = { forward_shift( opts.n ), backward_shift( opts.n ), tf };

    ex.plan = choose_cuts( family, opts.n );

    if ( ex.plan.exhausted )
        throw PlanExhausted( ex.plan );

    auto  gamma = compress( tf, ex.plan );

    ex.compression_residual = gamma.residual_norm;

    const auto  transferred = psi( gamma.gamma, opts.p );

    ex.window           = window_blocks( transferred.space(), opts.window_fraction );
    ex.transferred_norm = tail_norm( transferred, ex.window, opts.budget,
                                     tail_seeds( f, transferred.space(), ex.window ) );

    const Index  pn    = opts.plain_n > 0 ? opts.plain_n : opts.n;
    const auto   plain = toeplitz( f, SpaceSpec::unit( opts.p, pn ) );

    ex.plain_shift_norm = estimate_norm( plain, opts.budget, plane_wave_seeds( f, pn ) );

    try
    {
        ex.index_expected = -winding( f );
    }
    catch ( const NotInvertible & )
    {
        ex.index_expected.reset();
    }

    ex.index_observed = truncation_index( transferred );

    return ex;
}

std::vector< TransferResult >
run_phi_pipeline ( const std::vector< LaurentPolynomial > &  family,
                   const ExperimentOptions &                 opts )
{
    check_options( opts );

    if ( family.empty() )
        throw InvalidInput( "transfer pipeline needs a nonempty family" );

    std::vector< MatrixXc >  mats = { forward_shift( opts.n ), backward_shift( opts.n ) };

    for ( const auto &  f : family )
    {
        if ( f.is_zero() )
            throw InvalidInput( "transfer pipeline needs nonzero symbols" );

        mats.push_back( toeplitz_matrix( f, opts.n ) );
    }

    const auto  plan = choose_cuts( mats, opts.n );

    if ( plan.exhausted )
        throw PlanExhausted( plan );

    std::vector< TransferResult >  out;

    for ( size_t k = 0; k < family.size(); ++k )
    {
        const auto &  f     = family[k];
        auto          gamma = compress( mats[ k + 2 ], plan );
        const Index   w     = window_blocks( gamma.gamma.space(), opts.window_fraction );

        TransferResult  r;

        r.symbol               = f;
        r.band                 = gamma.gamma.band();
        r.compression_residual = gamma.residual_norm;
        r.source_norm2         = tail_norm( gamma.gamma, w, opts.budget );
        r.target_norm_p        = tail_norm( psi( gamma.gamma, opts.p ), w, opts.budget,
                                            tail_seeds( f, gamma.gamma.space(), w ) );

        if ( r.source_norm2.lower <= 0.0 )
            throw InvalidInput( "symbol has a vanishing tail compression" );

        r.ratio_lower = r.target_norm_p.lower / r.source_norm2.upper;
        r.ratio_upper = r.target_norm_p.upper / r.source_norm2.lower;

        const double  c = double( 2 * r.band + 1 );

        r.within_bounds = r.ratio_lower >= 1.0 / c - opts.ratio_tolerance &&
                          r.ratio_upper <= c + opts.ratio_tolerance;

        out.push_back( std::move( r ) );
    }

    return out;
}

HomomorphismDefect
homomorphism_defect ( const MatrixXc &  a,
                      const MatrixXc &  b,
                      const CutPlan &   plan )
{
    const MatrixXc  ab = a * b;
    const auto      ga = compress( a, plan );
    const auto      gb = compress( b, plan );
    const auto      gp = compress( ab, plan );

    const MatrixXc  gb_dense = gb.gamma.assemble();
    const MatrixXc  diff     = ga.gamma.assemble() * gb_dense - gp.gamma.assemble();

    HomomorphismDefect  d;

    d.defect = spectral_norm( diff );
    d.budget = ga.residual_norm * spectral_norm( gb_dense ) +
               spectral_norm( a ) * gb.residual_norm +
               gp.residual_norm;
    d.within = d.defect <= d.budget * ( 1.0 + 1e-9 ) + 1e-12;

    return d;
}

}// namespace calkin
