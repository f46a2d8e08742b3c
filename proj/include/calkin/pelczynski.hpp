#ifndef CALKIN_PELCZYNSKI_HPP
#define CALKIN_PELCZYNSKI_HPP
//
// Complemented embedding of l2(n) into l^p(2^n) through the Rademacher
// functions on the full Walsh cube, so every Khintchine moment is an exact
// average over the 2^n sign patterns.
//

#include <cmath>

#include "calkin/common.hpp"
#include "calkin/pnorm.hpp"
#include "calkin/space.hpp"

namespace calkin {

class RademacherSystem
{
public:
    RademacherSystem ( int     n,
                       double  p );

    int     n     () const { return _n; }
    double  p     () const { return _p; }
    Index   atoms () const { return Index( 1 ) << _n; }

    // value of the i-th Rademacher function on atom t
    double  sign  ( int  i, Index  t ) const { return ( t >> i ) & 1 ? -1.0 : 1.0; }

    Eigen::MatrixXd  sign_matrix () const;

    // l^p(2^n) with unit blocks
    SpaceSpec        target      () const { return SpaceSpec::unit( _p, atoms() ); }

private:
    int     _n;
    double  _p;
};

//
// (Jx)(t) = 2^{-n/p} sum_i x_i r_i(t),  so ||Jx||_p^p = E |sum_i x_i eps_i|^p
//
template < typename Derived >
Vector< typename Derived::Scalar >
embed ( const Eigen::MatrixBase< Derived > &  x,
        const RademacherSystem &              sys )
{
    using Scalar = typename Derived::Scalar;

    if ( x.size() != sys.n() )
        throw InvalidInput( "embed: vector length must equal n" );

    const double      scale = std::exp2( -double( sys.n() ) / sys.p() );
    Vector< Scalar >  y( sys.atoms() );

    for ( Index t = 0; t < sys.atoms(); ++t )
    {
        Scalar  s( 0 );

        for ( int i = 0; i < sys.n(); ++i )
            s += sys.sign( i, t ) * x( i );

        y( t ) = Scalar( scale ) * s;
    }

    return y;
}

//
// c_i = 2^{n/p - n} sum_t y(t) r_i(t);  project(embed(x)) = x
//
template < typename Derived >
Vector< typename Derived::Scalar >
project ( const Eigen::MatrixBase< Derived > &  y,
          const RademacherSystem &              sys )
{
    using Scalar = typename Derived::Scalar;

    if ( y.size() != sys.atoms() )
        throw InvalidInput( "project: vector length must equal 2^n" );

    const double      scale = std::exp2( double( sys.n() ) / sys.p() - double( sys.n() ) );
    Vector< Scalar >  c     = Vector< Scalar >::Zero( sys.n() );

    for ( Index t = 0; t < sys.atoms(); ++t )
        for ( int i = 0; i < sys.n(); ++i )
            c( i ) += sys.sign( i, t ) * y( t );

    return c * Scalar( scale );
}

//
// J o project as an operator on l^p(2^n); apply / apply_adjoint make it usable
// with estimate_operator_norm
//
struct ComplementingProjection
{
    const RademacherSystem *  sys;
};

Eigen::VectorXd  apply         ( const ComplementingProjection &  op, const Eigen::VectorXd &  y );
Eigen::VectorXd  apply_adjoint ( const ComplementingProjection &  op, const Eigen::VectorXd &  y );

struct KhintchineConstants
{
    int     n;
    double  p;
    double  lower_embed;       // min ||Jx||_p / ||x||_2 found
    double  upper_embed;       // max ||Jx||_p / ||x||_2 found
    double  projection_norm;   // lower estimate of ||J o project||_{p -> p}
};

KhintchineConstants  measure_constants ( int             n,
                                         double          p,
                                         const Budget &  budget = {} );

}// namespace calkin

#endif  // CALKIN_PELCZYNSKI_HPP
