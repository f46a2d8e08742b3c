#ifndef CALKIN_COMMON_HPP
#define CALKIN_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace calkin {

using Index = Eigen::Index;
using cplx  = std::complex< double >;

template < typename Scalar >
using Matrix = Eigen::Matrix< Scalar, Eigen::Dynamic, Eigen::Dynamic >;

template < typename Scalar >
using Vector = Eigen::Matrix< Scalar, Eigen::Dynamic, 1 >;

template < typename Scalar >
using RealOf = typename Eigen::NumTraits< Scalar >::Real;

using MatrixXc = Matrix< cplx >;
using VectorXc = Vector< cplx >;

//
// error hierarchy; the CLI maps InvalidInput to exit code 2
//
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error
{
public:
    using Error::Error;
};

//
// largest singular value of <a>
//
// Rows and columns that are identically zero do not change the norm, so they
// are dropped before the SVD. Corner blocks of banded matrices are mostly zero.
//
template < typename Derived >
RealOf< typename Derived::Scalar >
spectral_norm ( const Eigen::MatrixBase< Derived > &  a )
{
    using Scalar = typename Derived::Scalar;

    if ( a.size() == 0 )
        return 0;

    std::vector< Index >  rows, cols;

    for ( Index i = 0; i < a.rows(); ++i )
        if ( ! a.row( i ).isZero( 0 ) )
            rows.push_back( i );

    for ( Index j = 0; j < a.cols(); ++j )
        if ( ! a.col( j ).isZero( 0 ) )
            cols.push_back( j );

    if ( rows.empty() || cols.empty() )
        return 0;

    const Matrix< Scalar >  compact = a( rows, cols );

    if ( compact.rows() == 1 || compact.cols() == 1 )
        return compact.norm();

    Eigen::BDCSVD< Matrix< Scalar > >  svd( compact );

    return svd.singularValues()( 0 );
}

//
// top right-singular vector of <a> (unit Euclidean norm)
//
template < typename Derived >
Vector< typename Derived::Scalar >
top_right_singular_vector ( const Eigen::MatrixBase< Derived > &  a )
{
    using Scalar = typename Derived::Scalar;

    Vector< Scalar >  v = Vector< Scalar >::Zero( a.cols() );

    if ( a.cols() == 0 )
        return v;

    if ( a.rows() == 1 )
    {
        v = a.row( 0 ).adjoint();

        const auto  nrm = v.norm();

        if ( nrm > 0 ) v /= nrm;
        else           v( 0 ) = Scalar( 1 );

        return v;
    }

    Eigen::JacobiSVD< Matrix< Scalar > >  svd( a, Eigen::ComputeThinV );

    return svd.matrixV().col( 0 );
}

}// namespace calkin

#endif  // CALKIN_COMMON_HPP
