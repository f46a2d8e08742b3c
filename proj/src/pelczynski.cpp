#include "calkin/pelczynski.hpp"

#include <random>

namespace calkin {

RademacherSystem::RademacherSystem ( const int     n,
                                     const double  p )
        : _n( n )
        , _p( p )
{
    if ( n < 1 || n > 20 )
        throw InvalidInput( "Rademacher system needs 1 <= n <= 20" );

    if ( ! ( p > 1.0 ) || ! std::isfinite( p ) )
        throw InvalidInput( "exponent p must lie in (1, inf)" );
}

Eigen::MatrixXd
RademacherSystem::sign_matrix () const
{
    Eigen::MatrixXd  s( _n, atoms() );

    for ( int i = 0; i < _n; ++i )
        for ( Index t = 0; t < atoms(); ++t )
            s( i, t ) = sign( i, t );

    return s;
}

namespace {

// J^T z = 2^{-n/p} sum_t r_i(t) z(t)
Eigen::VectorXd
embed_adjoint ( const Eigen::VectorXd &   z,
                const RademacherSystem &  sys )
{
    const double  n = double( sys.n() );

    return project( z, sys ) * std::exp2( n - 2.0 * n / sys.p() );
}

double
embed_ratio ( const Eigen::VectorXd &   x,
              const RademacherSystem &  sys,
              const SpaceSpec &         target )
{
    return mixed_norm( target, embed( x, sys ) ) / x.norm();
}

//
// local extremum of ||Jx||_p over the unit sphere of l2(n) by projected
// gradient steps; direction = +1 maximizes, -1 minimizes
//
double
sphere_extremum ( const RademacherSystem &  sys,
                  const SpaceSpec &         target,
                  Eigen::VectorXd           x,
                  const double              direction,
                  const Budget &            budget )
{
    x.normalize();

    double  value = embed_ratio( x, sys, target );
    double  eta   = 0.25;

    for ( int  it = 0; it < budget.iterations; ++it )
    {
        Eigen::VectorXd  g = direction * embed_adjoint( duality_map( target, embed( x, sys ) ), sys );

        g -= g.dot( x ) * x;

        const double  gn = g.norm();

        if ( gn <= budget.tolerance * value )
            break;

        bool  moved = false;

        while ( eta > 1e-14 )
        {
            const Eigen::VectorXd  xt = ( x + ( eta / gn ) * g ).normalized();
            const double           vt = embed_ratio( xt, sys, target );

            if ( direction * ( vt - value ) >= 1e-4 * eta * gn )
            {
                const double  rel = std::abs( vt - value ) / vt;

                x     = xt;
                value = vt;
                eta   = std::min( 1.0, 2.0 * eta );
                moved = true;

                if ( rel <= budget.tolerance )
                    return value;

                break;
            }

            eta *= 0.5;
        }

        if ( ! moved )
            break;
    }

    return value;
}

}// namespace anonymous

Eigen::VectorXd
apply ( const ComplementingProjection &  op,
        const Eigen::VectorXd &          y )
{
    return embed( project( y, *op.sys ), *op.sys );
}

// (J R)^T = R^T J^T
Eigen::VectorXd
apply_adjoint ( const ComplementingProjection &  op,
                const Eigen::VectorXd &          y )
{
    const auto &  sys = *op.sys;
    const double  n   = double( sys.n() );

    // R^T c = 2^{n/p - n} sum_i c_i r_i(t) = 2^{2n/p - n} J c
    return embed( embed_adjoint( y, sys ), sys ) * std::exp2( 2.0 * n / sys.p() - n );
}

KhintchineConstants
measure_constants ( const int       n,
                    const double    p,
                    const Budget &  budget )
{
    if ( n < 1 || n > 14 )
        throw InvalidInput( "Khintchine measurement limited to 1 <= n <= 14" );

    if ( budget.iterations <= 0 || budget.restarts < 0 )
        throw InvalidInput( "measurement budget must be positive" );

    const RademacherSystem  sys( n, p );
    const SpaceSpec         target = sys.target();

    std::vector< Eigen::VectorXd >  seeds;

    seeds.push_back( Eigen::VectorXd::Unit( n, 0 ) );
    seeds.push_back( Eigen::VectorXd::Ones( n ) );

    {
        std::mt19937_64                     rng( budget.seed );
        std::normal_distribution< double >  normal;

        for ( int r = 0; r < budget.restarts; ++r )
        {
            Eigen::VectorXd  x( n );

            for ( int i = 0; i < n; ++i )
                x( i ) = normal( rng );

            seeds.push_back( x );
        }
    }

    KhintchineConstants  kc{ n, p, std::numeric_limits< double >::infinity(), 0.0, 0.0 };

    for ( const auto &  s : seeds )
    {
        kc.lower_embed = std::min( kc.lower_embed, sphere_extremum( sys, target, s, -1.0, budget ) );
        kc.upper_embed = std::max( kc.upper_embed, sphere_extremum( sys, target, s, +1.0, budget ) );
    }

    std::vector< Eigen::VectorXd >  proj_seeds = { embed( seeds[0], sys ),
                                                   embed( seeds[1], sys ),
                                                   Eigen::VectorXd::Unit( sys.atoms(), 0 ) };

    const ComplementingProjection  op{ &sys };

    kc.projection_norm = estimate_operator_norm< double >( op, target, budget, std::move( proj_seeds ) ).lower;

    return kc;
}

}// namespace calkin
