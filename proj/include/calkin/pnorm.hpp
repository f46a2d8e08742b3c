#ifndef CALKIN_PNORM_HPP
#define CALKIN_PNORM_HPP
//
// Operator norm estimation on X_p = (l2 + l2 + ...)_p.
//
// Lower bounds always come with a witness vector; upper bounds come from the
// block structure. The true X_p norm is not computable in general for p != 2.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

#include <boost/random/sobol.hpp>

#include "calkin/blockop.hpp"
#include "calkin/common.hpp"
#include "calkin/space.hpp"

namespace calkin {

enum class NormMethod
{
    power_iteration,
    multi_restart_ascent,
    svd_exact,
    block_witness,
    brute_force_oracle
};

constexpr std::string_view
to_string ( const NormMethod  m )
{
    switch ( m )
    {
        case NormMethod::power_iteration      : return "power-iteration";
        case NormMethod::multi_restart_ascent : return "multi-restart-ascent";
        case NormMethod::svd_exact            : return "svd-exact";
        case NormMethod::block_witness        : return "block-witness";
        case NormMethod::brute_force_oracle   : return "brute-force-oracle";
    }

    return "unknown";
}

struct Budget
{
    int            iterations = 400;      // per restart
    int            restarts   = 6;        // random restarts on top of structured seeds
    std::uint64_t  seed       = 1;
    double         tolerance  = 1e-10;    // relative change of the norm quotient
};

template < typename Scalar >
struct NormEstimate
{
    double            lower      = 0.0;
    double            upper      = std::numeric_limits< double >::infinity();
    Vector< Scalar >  witness;             // unit vector in X_p attaining <lower>
    NormMethod        method     = NormMethod::block_witness;
    int               iterations = 0;
    bool              converged  = false;
};

template < typename Scalar >
NormEstimate< Scalar >
operator * ( const double              c,
             NormEstimate< Scalar >    e )
{
    e.lower *= std::abs( c );
    e.upper *= std::abs( c );

    return e;
}

namespace detail {

template < typename Scalar >
struct LocalResult
{
    Vector< Scalar >  x;
    double            value;
    int               iterations;
    bool              converged;
};

template < typename Op, typename Scalar >
double
norm_quotient ( const Op &                 op,
                const SpaceSpec &          space,
                const Vector< Scalar > &   x )
{
    const double  nx = mixed_norm( space, x );

    return nx == 0.0 ? 0.0 : mixed_norm( space, apply( op, x ) ) / nx;
}

//
// fixed-point iteration  x <- J_{p'}( A^H J_p( A x ) )
//
// J_q is the duality map of l^q(l2). The quotient ||Ax|| / ||x|| is
// non-decreasing along the iteration; for p = 2 it is the power method.
//
template < typename Op, typename Scalar >
LocalResult< Scalar >
power_iteration ( const Op &                 op,
                  const SpaceSpec &          space,
                  Vector< Scalar >           x,
                  const int                  iterations,
                  const double               tol )
{
    const double  p  = space.p();
    const double  pd = space.dual_exponent();

    x /= Scalar( mixed_norm( space, x ) );

    double  value = norm_quotient( op, space, x );
    int     it    = 0;

    for ( ; it < iterations; ++it )
    {
        const Vector< Scalar >  y = apply( op, x );

        if ( y.isZero( 0 ) )
            return { x, 0.0, it, true };

        const Vector< Scalar >  w = apply_adjoint( op, duality_map( space, y, p ) );

        if ( w.isZero( 0 ) )
            return { x, value, it, true };

        Vector< Scalar >  xn = duality_map( space, w, pd );
        const double      vn = norm_quotient( op, space, xn );

        // monotone up to rounding
        if ( vn <= value )
            return { x, value, it + 1, true };

        const double  rel = ( vn - value ) / vn;

        x     = std::move( xn );
        value = vn;

        if ( rel <= tol )
            return { x, value, it + 1, true };
    }

    return { x, value, it, false };
}

//
// projected gradient ascent of ||Ax|| / ||x|| over the unit sphere of X_p,
// real and imaginary parts moved jointly, Armijo backtracking
//
template < typename Op, typename Scalar >
LocalResult< Scalar >
gradient_ascent ( const Op &                 op,
                  const SpaceSpec &          space,
                  Vector< Scalar >           x,
                  const int                  iterations,
                  const double               tol )
{
    x /= Scalar( mixed_norm( space, x ) );

    double  value = norm_quotient( op, space, x );
    double  eta   = 0.25;
    int     it    = 0;

    for ( ; it < iterations; ++it )
    {
        const Vector< Scalar >  y = apply( op, x );

        if ( y.isZero( 0 ) )
            return { x, 0.0, it, false };

        // Euclidean gradient of the quotient at a unit vector; tangent by construction
        const Vector< Scalar >  g  = apply_adjoint( op, duality_map( space, y ) ) - Scalar( value ) * duality_map( space, x );
        const double            gn = double( g.norm() );
        const double            xn = double( x.norm() );

        if ( gn <= tol * value )
            return { x, value, it, true };

        const Vector< Scalar >  d     = g * Scalar( xn / gn );
        const double            slope = gn * xn;
        bool                    moved = false;

        while ( eta > 1e-14 )
        {
            Vector< Scalar >  xt = x + Scalar( eta ) * d;

            xt /= Scalar( mixed_norm( space, xt ) );

            const double  vt = norm_quotient( op, space, xt );

            if ( vt >= value + 1e-4 * eta * slope )
            {
                const double  rel = ( vt - value ) / vt;

                x     = std::move( xt );
                value = vt;
                eta   = std::min( 1.0, 2.0 * eta );
                moved = true;

                if ( rel <= tol )
                    return { x, value, it + 1, true };

                break;
            }

            eta *= 0.5;
        }

        if ( ! moved )
            return { x, value, it + 1, true };
    }

    return { x, value, it, false };
}

template < typename Scalar >
Vector< Scalar >
random_direction ( std::mt19937_64 &  rng,
                   const Index        dim )
{
    std::normal_distribution< double >  normal;
    Vector< Scalar >                    x( dim );

    for ( Index i = 0; i < dim; ++i )
    {
        if constexpr ( Eigen::NumTraits< Scalar >::IsComplex )
        {
            const double  re = normal( rng );
            const double  im = normal( rng );

            x( i ) = Scalar( re, im );
        }
        else
            x( i ) = Scalar( normal( rng ) );
    }

    return x;
}

template < typename Scalar >
struct RestartOutcome
{
    Vector< Scalar >  x;
    double            value      = -1.0;
    NormMethod        method     = NormMethod::power_iteration;
    int               iterations = 0;
    bool              converged  = false;
};

//
// best local maximum over all seeds; restarts are reduced in seed order
//
template < typename Op, typename Scalar >
RestartOutcome< Scalar >
multi_restart ( const Op &                              op,
                const SpaceSpec &                       space,
                const Budget &                          budget,
                const std::vector< Vector< Scalar > > & seeds )
{
    RestartOutcome< Scalar >  best;

    for ( const auto &  seed : seeds )
    {
        if ( seed.size() != space.dim() || mixed_norm( space, seed ) == 0.0 )
            continue;

        auto  pw = power_iteration( op, space, seed, budget.iterations, budget.tolerance );

        if ( pw.value == 0.0 )
            continue;

        auto        asc    = gradient_ascent( op, space, pw.x, std::max( 1, budget.iterations / 4 ), budget.tolerance );
        NormMethod  method = NormMethod::power_iteration;

        if ( asc.value > pw.value * ( 1.0 + budget.tolerance ) )
            method = NormMethod::multi_restart_ascent;
        else
            asc = pw;

        if ( asc.value > best.value )
        {
            best.x          = asc.x;
            best.value      = asc.value;
            best.method     = method;
            best.converged  = pw.converged;
        }

        best.iterations += pw.iterations;
    }

    return best;
}

template < typename Scalar >
void
add_random_seeds ( std::vector< Vector< Scalar > > &  seeds,
                   const Index                        dim,
                   const Budget &                     budget )
{
    std::mt19937_64  rng( budget.seed );

    for ( int r = 0; r < budget.restarts; ++r )
        seeds.push_back( random_direction< Scalar >( rng, dim ) );
}

}// namespace detail

//
// norm estimate for any operator type with apply / apply_adjoint overloads;
// <upper> is whatever certified upper bound the caller has
//
template < typename Scalar, typename Op >
NormEstimate< Scalar >
estimate_operator_norm ( const Op &                         op,
                         const SpaceSpec &                  space,
                         const Budget &                     budget,
                         std::vector< Vector< Scalar > >    seeds = {},
                         const double                       upper = std::numeric_limits< double >::infinity() )
{
    if ( budget.iterations <= 0 || budget.restarts < 0 )
        throw InvalidInput( "norm estimation budget must be positive" );

    detail::add_random_seeds( seeds, space.dim(), budget );

    auto  best = detail::multi_restart( op, space, budget, seeds );

    NormEstimate< Scalar >  e;

    e.upper      = upper;
    e.iterations = best.iterations;
    e.converged  = best.converged;
    e.method     = best.method;

    if ( best.value <= 0.0 )
    {
        e.witness       = Vector< Scalar >::Zero( space.dim() );
        e.witness( 0 )  = Scalar( 1 );
        e.witness      /= Scalar( mixed_norm( space, e.witness ) );
        e.lower         = detail::norm_quotient( op, space, e.witness );
        e.converged     = true;

        return e;
    }

    e.witness = best.x / Scalar( mixed_norm( space, best.x ) );
    e.lower   = detail::norm_quotient( op, space, e.witness );

    return e;
}

//
// estimate of ||T||_{X_p -> X_p}
//
// lower: best of the block witness, the duality-map power iteration and
//        gradient ascent over all restarts
// upper: min( (2m+1) sup ||T(i,j)||,  sum_s sup_j ||T(j+s,j)|| )
//
// For p = 2 both bounds are the largest singular value.
//
template < typename Scalar >
NormEstimate< Scalar >
estimate_norm ( const BlockBandedOperator< Scalar > &  t,
                const Budget &                         budget,
                std::vector< Vector< Scalar > >        extra_seeds = {} )
{
    if ( budget.iterations <= 0 || budget.restarts < 0 )
        throw InvalidInput( "norm estimation budget must be positive" );

    const auto &  space    = t.space();
    const auto    sandwich = norm_sandwich( t );

    double  diag_sum = 0.0;

    for ( Index s = -t.band(); s <= t.band(); ++s )
        diag_sum += t.diagonal_sup( s );

    NormEstimate< Scalar >  e;

    if ( space.p() == 2.0 )
    {
        Eigen::BDCSVD< Matrix< Scalar > >  svd( t.assemble(), Eigen::ComputeThinV );

        e.lower      = svd.singularValues()( 0 );
        e.upper      = e.lower;
        e.witness    = svd.matrixV().col( 0 );
        e.method     = NormMethod::svd_exact;
        e.converged  = true;

        return e;
    }

    auto &  seeds = extra_seeds;

    seeds.push_back( sandwich.witness );

    // best block of every block diagonal, and a canonical basis vector of the top column block
    for ( Index s = -t.band(); s <= t.band(); ++s )
    {
        Index   arg  = -1;
        double  best = 0.0;

        for ( Index j = 0; j < t.num_blocks(); ++j )
            if ( t.block_norm( j + s, j ) > best )
            {
                best = t.block_norm( j + s, j );
                arg  = j;
            }

        if ( arg < 0 )
            continue;

        Vector< Scalar >  w = Vector< Scalar >::Zero( space.dim() );

        w.segment( space.block_begin( arg ), space.block_size( arg ) ) = top_right_singular_vector( t.block( arg + s, arg ) );
        seeds.push_back( std::move( w ) );
    }

    {
        Vector< Scalar >  e0 = Vector< Scalar >::Zero( space.dim() );

        e0( space.block_begin( sandwich.col_block ) ) = Scalar( 1 );
        seeds.push_back( std::move( e0 ) );
    }

    e = estimate_operator_norm< Scalar >( t, space, budget, std::move( seeds ), std::min( sandwich.upper, diag_sum ) );

    // the block witness alone already certifies sup ||T(i,j)||
    if ( e.lower < sandwich.lower )
    {
        e.witness = sandwich.witness / Scalar( mixed_norm( space, sandwich.witness ) );
        e.lower   = detail::norm_quotient( t, space, e.witness );
        e.method  = NormMethod::block_witness;
    }

    if ( e.lower > e.upper )
    {
        // rounding only: both are certified bounds of the same number
        if ( e.lower > e.upper * ( 1.0 + 1e-9 ) + 1e-300 )
            throw Error( "certified lower bound exceeds certified upper bound" );

        e.upper = e.lower;
    }

    return e;
}

//
// independent oracle for tiny instances: Sobol directions on the cube mapped
// to the sphere, followed by derivative-free compass search on the best ones
//
template < typename Scalar >
double
brute_force_norm ( const BlockBandedOperator< Scalar > &  t,
                   const std::size_t                      samples,
                   const std::size_t                      polished = 16 )
{
    const auto &  space = t.space();
    const Index   dim   = space.dim();

    if ( dim > 12 )
        throw InvalidInput( "brute force oracle limited to dim <= 12" );

    constexpr bool  is_complex = Eigen::NumTraits< Scalar >::IsComplex;
    const Index     nreal      = is_complex ? 2 * dim : dim;
    const auto      a          = t.assemble();

    auto  to_vector = [&] ( const Eigen::VectorXd &  u )
    {
        Vector< Scalar >  x( dim );

        for ( Index i = 0; i < dim; ++i )
        {
            if constexpr ( is_complex ) x( i ) = Scalar( u( 2*i ), u( 2*i+1 ) );
            else                        x( i ) = Scalar( u( i ) );
        }

        return x;
    };

    auto  quotient = [&] ( const Eigen::VectorXd &  u )
    {
        const auto    x  = to_vector( u );
        const double  nx = mixed_norm( space, x );

        return nx == 0.0 ? 0.0 : mixed_norm( space, Vector< Scalar >( a * x ) ) / nx;
    };

    // keep the best <polished> samples
    std::vector< std::pair< double, Eigen::VectorXd > >  top;
    boost::random::sobol                                 sobol{ std::size_t( nreal ) };
    Eigen::VectorXd                                      u( nreal );

    for ( std::size_t s = 0; s < samples; ++s )
    {
        // the sequence passes through the centre of the cube, which is the zero vector
        do
        {
            for ( Index k = 0; k < nreal; ++k )
                u( k ) = 2.0 * std::ldexp( double( sobol() ), -64 ) - 1.0;
        }
        while ( u.isZero( 0.0 ) );

        const double  v = quotient( u );

        if ( top.size() < polished || v > top.back().first )
        {
            if ( top.size() == polished )
                top.pop_back();

            auto  pos = std::upper_bound( top.begin(), top.end(), v,
                                          [] ( double  val, const auto &  e ) { return val > e.first; } );

            top.insert( pos, { v, u } );
        }
    }

    double  best = 0.0;

    for ( auto &  [ value, x ] : top )
    {
        double  f = value;
        double  h = 0.1 * x.norm() / std::sqrt( double( nreal ) );

        while ( h > 1e-10 * x.norm() )
        {
            bool  improved = false;

            for ( Index k = 0; k < nreal; ++k )
                for ( double  sgn : { 1.0, -1.0 } )
                {
                    Eigen::VectorXd  y = x;

                    y( k ) += sgn * h;

                    const double  fy = quotient( y );

                    if ( fy > f )
                    {
                        x        = y;
                        f        = fy;
                        improved = true;
                    }
                }

            if ( ! improved )
                h *= 0.5;
        }

        best = std::max( best, f );
    }

    return best;
}

}// namespace calkin

#endif  // CALKIN_PNORM_HPP
