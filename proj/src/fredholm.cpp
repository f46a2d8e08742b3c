#include "calkin/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace calkin {

namespace {

constexpr double  vanishing_tol = 1e-9;
constexpr double  required_gap  = 100.0;

struct KernelCount
{
    Index                  dim;
    double                 gap;
    std::vector< double >  smallest;
};

KernelCount
count_kernel ( const MatrixXc &  a,
               const double      threshold )
{
    KernelCount  kc{ 0, std::numeric_limits< double >::infinity(), {} };

    if ( a.cols() == 0 )
        return kc;

    Eigen::BDCSVD< MatrixXc >  svd( a );
    const auto &               sv   = svd.singularValues();   // descending
    const double               smax = sv( 0 );
    const double               cut  = threshold * smax;

    for ( Index k = sv.size() - 1; k >= 0 && Index( kc.smallest.size() ) < 4; --k )
        kc.smallest.push_back( sv( k ) );

    double  largest_zero     = -1.0;
    double  smallest_nonzero = -1.0;

    for ( Index k = 0; k < sv.size(); ++k )
    {
        if ( sv( k ) < cut )
        {
            ++kc.dim;
            largest_zero = std::max( largest_zero, double( sv( k ) ) );
        }
        else
            smallest_nonzero = double( sv( k ) );
    }

    if ( smax == 0.0 )
        kc.gap = 0.0;
    else if ( largest_zero < 0.0 )
        kc.gap = smallest_nonzero / cut;
    else if ( largest_zero > 0.0 && smallest_nonzero >= 0.0 )
        kc.gap = smallest_nonzero / largest_zero;

    return kc;
}

}// namespace anonymous

int
winding ( const LaurentPolynomial &  f,
          int                        grid )
{
    if ( grid < 8 )
        throw InvalidInput( "winding grid too coarse" );

    if ( f.min_circle( grid ) <= vanishing_tol )
        throw NotInvertible( "symbol not invertible on circle" );

    for ( ; grid <= ( 1 << 22 ); grid *= 2 )
    {
        double  total = 0.0;
        bool    fine  = true;
        cplx    prev  = f.at_angle( 0.0 );

        for ( int  k = 1; k <= grid && fine; ++k )
        {
            const cplx    cur = f.at_angle( 2.0 * std::numbers::pi * k / grid );
            const double  d   = std::arg( cur / prev );

            if ( std::abs( d ) >= std::numbers::pi / 2 )
                fine = false;

            total += d;
            prev   = cur;
        }

        if ( fine )
            return int( std::lround( total / ( 2.0 * std::numbers::pi ) ) );
    }

    throw NotInvertible( "winding grid refinement did not resolve the argument" );
}

TruncationIndex
truncation_index ( const BlockBandedOperator< cplx > &  t,
                   const double                         threshold )
{
    const auto &  space = t.space();

    TruncationIndex  ti;

    ti.context = t.band();

    if ( ti.context >= t.num_blocks() )
        throw InvalidInput( "truncation too short for the band" );

    const Index     inner = space.block_begin( t.num_blocks() - ti.context );
    const MatrixXc  a     = t.assemble();

    const auto  fwd = count_kernel( a.leftCols( inner ), threshold );
    const auto  adj = count_kernel( a.adjoint().leftCols( inner ), threshold );

    ti.kernel_dim       = fwd.dim;
    ti.cokernel_dim     = adj.dim;
    ti.value            = int( fwd.dim - adj.dim );
    ti.gap              = std::min( fwd.gap, adj.gap );
    ti.converged        = ti.gap >= required_gap;
    ti.smallest_forward = fwd.smallest;
    ti.smallest_adjoint = adj.smallest;

    return ti;
}

IndexReport
index_report ( const LaurentPolynomial &  f,
               const Index                n,
               const double               threshold )
{
    IndexReport  rep;

    rep.symbol = f;

    try
    {
        rep.winding_index = -winding( f );
    }
    catch ( const NotInvertible & )
    {
        rep.winding_index.reset();
    }

    rep.truncation = truncation_index( toeplitz( f, SpaceSpec::unit( 2.0, n ) ), threshold );
    rep.agree      = rep.winding_index && rep.truncation.converged && *rep.winding_index == rep.truncation.value;

    return rep;
}

PathRejected::PathRejected ( int  step_, double  t_, double  min_modulus_, bool  vanishes_ )
        : Error( fmt::format( "symbol path rejected at step {} (t = {}): min |f| = {:.3e}{}",
                              step_, t_, min_modulus_, vanishes_ ? ", symbol vanishes on the circle" : " below the certification margin" ) )
        , step( step_ )
        , t( t_ )
        , min_modulus( min_modulus_ )
        , vanishes( vanishes_ )
{}

void
validate_path ( const SymbolPath &  path,
                const int           grid )
{
    if ( path.steps <= 0 )
        throw InvalidInput( "symbol path needs at least one step" );

    const double  lipschitz_t = ( path.end - path.start ).coefficient_l1();
    const double  deriv       = std::max( path.start.derivative_bound(), path.end.derivative_bound() );
    const double  margin      = 0.5 * lipschitz_t / path.steps + 0.5 * deriv * 2.0 * std::numbers::pi / grid;

    for ( int  k = 0; k <= path.steps; ++k )
    {
        const double  lo = path.at( k ).min_circle( grid );

        if ( lo <= vanishing_tol || lo <= margin )
            throw PathRejected( k, path.t( k ), lo, lo <= vanishing_tol );
    }
}

PathIndex
path_index_constancy ( const SymbolPath &  path,
                       const int           grid )
{
    validate_path( path, grid );

    PathIndex  res;

    for ( int  k = 0; k <= path.steps; ++k )
        res.indices.push_back( -winding( path.at( k ), grid ) );

    res.constant = std::all_of( res.indices.begin(), res.indices.end(),
                                [&] ( int  v ) { return v == res.indices.front(); } );

    return res;
}

}// namespace calkin
