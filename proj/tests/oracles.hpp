#ifndef CALKIN_TESTS_ORACLES_HPP
#define CALKIN_TESTS_ORACLES_HPP
//
// Reference computations used by the tests. Nothing here calls into the
// library's numerical routines; everything is recomputed from raw entries.
//

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx     = std::complex< double >;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using Index    = Eigen::Index;

inline VectorXc
random_vector ( std::mt19937_64 &  rng,
                const Index        n )
{
    std::normal_distribution< double >  g;
    VectorXc                            x( n );

    for ( Index i = 0; i < n; ++i )
    {
        const double  re = g( rng );
        const double  im = g( rng );

        x( i ) = cplx( re, im );
    }

    return x;
}

inline MatrixXc
random_matrix ( std::mt19937_64 &  rng,
                const Index        rows,
                const Index        cols )
{
    MatrixXc  a( rows, cols );

    for ( Index j = 0; j < cols; ++j )
        a.col( j ) = random_vector( rng, rows );

    return a;
}

// (sum_k ||x_k||^p)^{1/p} with blocks [cuts[k], cuts[k+1])
inline double
mixed_norm ( const std::vector< Index > &  cuts,
             const double                  p,
             const VectorXc &              x )
{
    double  s = 0.0;

    for ( size_t k = 0; k + 1 < cuts.size(); ++k )
    {
        double  b = 0.0;

        for ( Index i = cuts[k]; i < cuts[k + 1]; ++i )
            b += std::norm( x( i ) );

        s += std::pow( std::sqrt( b ), p );
    }

    return std::pow( s, 1.0 / p );
}

// largest singular value through the Hermitian eigenproblem of A^* A
inline double
spectral_norm ( const MatrixXc &  a )
{
    if ( a.rows() == 0 || a.cols() == 0 )
        return 0.0;

    Eigen::SelfAdjointEigenSolver< MatrixXc >  es( a.adjoint() * a, Eigen::EigenvaluesOnly );

    return std::sqrt( std::max( 0.0, es.eigenvalues().maxCoeff() ) );
}

// JacobiSVD based, for comparisons where the normal equations lose digits
inline double
svd_norm ( const MatrixXc &  a )
{
    if ( a.rows() == 0 || a.cols() == 0 )
        return 0.0;

    return Eigen::JacobiSVD< MatrixXc >( a ).singularValues()( 0 );
}

// entry (i, j) = a_{i-j}
inline MatrixXc
toeplitz ( const std::map< int, cplx > &  coeffs,
           const Index                    n )
{
    MatrixXc  t = MatrixXc::Zero( n, n );

    for ( Index i = 0; i < n; ++i )
        for ( Index j = 0; j < n; ++j )
        {
            auto  it = coeffs.find( int( i - j ) );

            if ( it != coeffs.end() )
                t( i, j ) = it->second;
        }

    return t;
}

//
// winding number of f(w) = sum a_n w^n around 0 from the roots of
// w^d f(w): zeros inside the unit disk minus d
//
inline int
winding_by_roots ( const std::map< int, cplx > &  coeffs )
{
    const int  lo = coeffs.begin()->first;
    const int  hi = coeffs.rbegin()->first;

    // w^{-lo} f(w) is an ordinary polynomial of degree hi - lo
    const int  deg = hi - lo;

    if ( deg == 0 )
        return lo;

    const cplx  lead = coeffs.at( hi );
    MatrixXc    comp = MatrixXc::Zero( deg, deg );

    for ( int k = 0; k < deg; ++k )
    {
        auto  it = coeffs.find( lo + k );

        comp( 0, deg - 1 - k ) = -( it == coeffs.end() ? cplx( 0 ) : it->second ) / lead;
    }

    for ( int k = 1; k < deg; ++k )
        comp( k, k - 1 ) = 1.0;

    Eigen::ComplexEigenSolver< MatrixXc >  es( comp, false );
    int                                    inside = 0;

    for ( Index k = 0; k < deg; ++k )
        if ( std::abs( es.eigenvalues()( k ) ) < 1.0 )
            ++inside;

    return inside + lo;
}

// E |sum_i x_i eps_i|^4 = 3 ||x||^4 - 2 sum x_i^4 for real x
inline double
fourth_moment ( const Eigen::VectorXd &  x )
{
    return 3.0 * std::pow( x.squaredNorm(), 2 ) - 2.0 * x.array().pow( 4 ).sum();
}

// E |sum_i x_i eps_i|^p by enumerating all sign patterns
inline double
sign_moment ( const Eigen::VectorXd &  x,
              const double             p )
{
    const Index  n     = x.size();
    const Index  atoms = Index( 1 ) << n;
    double       s     = 0.0;

    for ( Index t = 0; t < atoms; ++t )
    {
        double  v = 0.0;

        for ( Index i = 0; i < n; ++i )
            v += ( ( t >> i ) & 1 ) ? -x( i ) : x( i );

        s += std::pow( std::abs( v ), p );
    }

    return s / double( atoms );
}

}// namespace oracle

#endif  // CALKIN_TESTS_ORACLES_HPP
