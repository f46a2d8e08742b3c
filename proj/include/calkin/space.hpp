#ifndef CALKIN_SPACE_HPP
#define CALKIN_SPACE_HPP
//
// Finite truncations of the mixed-norm space
//
//   X_p = ( l2(block_1) + l2(block_2) + ... )_p
//
// Block b (0-based) covers the index range [ cuts[b], cuts[b+1] ).
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "calkin/common.hpp"

namespace calkin {

class SpaceSpec
{
public:
    SpaceSpec ( double                 p,
                std::vector< Index >   cuts )
            : _p( p )
            , _cuts( std::move( cuts ) )
    {
        if ( ! ( p > 1.0 ) || ! std::isfinite( p ) )
            throw InvalidInput( "exponent p must lie in (1, inf)" );

        if ( _cuts.size() < 2 )
            throw InvalidInput( "cut list needs at least two entries (0 and dim)" );

        if ( _cuts.front() != 0 )
            throw InvalidInput( "cut list must start at 0" );

        for ( size_t k = 1; k < _cuts.size(); ++k )
            if ( _cuts[k] <= _cuts[k-1] )
                throw InvalidInput( "cut list must be strictly increasing" );
    }

    // all blocks of <width>, the last one possibly shorter
    static SpaceSpec
    uniform ( double  p,
              Index   dim,
              Index   width )
    {
        if ( width <= 0 || dim <= 0 )
            throw InvalidInput( "uniform space needs positive dim and width" );

        std::vector< Index >  cuts;

        for ( Index r = 0; r < dim; r += width )
            cuts.push_back( r );

        cuts.push_back( dim );

        return SpaceSpec( p, std::move( cuts ) );
    }

    // plain l^p(dim)
    static SpaceSpec
    unit ( double  p,
           Index   dim )
    {
        return uniform( p, dim, 1 );
    }

    double  p              () const { return _p; }
    double  dual_exponent  () const { return _p / ( _p - 1.0 ); }

    const std::vector< Index > &  cuts () const { return _cuts; }

    Index  dim         () const { return _cuts.back(); }
    Index  num_blocks  () const { return Index( _cuts.size() ) - 1; }

    Index  block_begin ( const Index  b ) const { return _cuts[b]; }
    Index  block_end   ( const Index  b ) const { return _cuts[b+1]; }
    Index  block_size  ( const Index  b ) const { return _cuts[b+1] - _cuts[b]; }

    // block containing index <i>
    Index
    block_of ( const Index  i ) const
    {
        auto  it = std::upper_bound( _cuts.begin(), _cuts.end(), i );

        return Index( it - _cuts.begin() ) - 1;
    }

    SpaceSpec
    with_exponent ( const double  p ) const
    {
        return SpaceSpec( p, _cuts );
    }

    // the space formed by blocks first, first+1, ..., shifted to start at 0
    SpaceSpec
    tail ( const Index  first ) const
    {
        if ( first < 0 || first >= num_blocks() )
            throw InvalidInput( "tail start outside block range" );

        std::vector< Index >  cuts;

        for ( size_t k = size_t( first ); k < _cuts.size(); ++k )
            cuts.push_back( _cuts[k] - _cuts[first] );

        return SpaceSpec( _p, std::move( cuts ) );
    }

    bool same_blocks ( const SpaceSpec &  other ) const { return _cuts == other._cuts; }

    friend bool operator == ( const SpaceSpec &, const SpaceSpec & ) = default;

private:
    double                _p;
    std::vector< Index >  _cuts;
};

namespace detail {

template < typename Derived >
void
check_length ( const SpaceSpec &                     space,
               const Eigen::MatrixBase< Derived > &  x )
{
    if ( x.size() != space.dim() )
        throw InvalidInput( "vector length does not match space dimension" );
}

template < typename Derived >
std::vector< double >
block_norms ( const SpaceSpec &                     space,
              const Eigen::MatrixBase< Derived > &  x )
{
    std::vector< double >  norms( size_t( space.num_blocks() ) );

    for ( Index b = 0; b < space.num_blocks(); ++b )
        norms[b] = double( x.segment( space.block_begin( b ), space.block_size( b ) ).norm() );

    return norms;
}

// (sum_k b_k^q)^{1/q}, scaled by the largest entry against over/underflow
inline double
lq_norm ( const std::vector< double > &  b,
          const double                   q )
{
    const double  scale = b.empty() ? 0.0 : *std::max_element( b.begin(), b.end() );

    if ( scale == 0.0 )
        return 0.0;

    double  sum = 0.0;

    for ( auto  v : b )
        sum += std::pow( v / scale, q );

    return scale * std::pow( sum, 1.0 / q );
}

}// namespace detail

//
// (sum_k ||x_k||_2^q)^{1/q} with q defaulting to the space exponent
//
template < typename Derived >
double
mixed_norm ( const SpaceSpec &                     space,
             const Eigen::MatrixBase< Derived > &  x,
             const double                          q )
{
    detail::check_length( space, x );

    return detail::lq_norm( detail::block_norms( space, x ), q );
}

template < typename Derived >
double
mixed_norm ( const SpaceSpec &                     space,
             const Eigen::MatrixBase< Derived > &  x )
{
    return mixed_norm( space, x, space.p() );
}

// norm of the dual space l^{p'}(l2)
template < typename Derived >
double
dual_norm ( const SpaceSpec &                     space,
            const Eigen::MatrixBase< Derived > &  x )
{
    return mixed_norm( space, x, space.dual_exponent() );
}

//
// norming functional of x in l^q(l2): blockwise
//
//   x*_k = ||x_k||^{q-2} x_k / ||x||^{q-1}
//
// so that <x*, x> = ||x|| and ||x*||_{q'} = 1. Zero blocks map to zero.
//
template < typename Derived >
Vector< typename Derived::Scalar >
duality_map ( const SpaceSpec &                     space,
              const Eigen::MatrixBase< Derived > &  x,
              const double                          q )
{
    using Scalar = typename Derived::Scalar;

    detail::check_length( space, x );

    const auto    bnorm = detail::block_norms( space, x );
    const double  total = detail::lq_norm( bnorm, q );

    if ( total == 0.0 )
        throw InvalidInput( "no norming functional direction" );

    Vector< Scalar >  y = Vector< Scalar >::Zero( x.size() );

    for ( Index b = 0; b < space.num_blocks(); ++b )
    {
        if ( bnorm[b] == 0.0 )
            continue;

        const double  w = std::pow( bnorm[b] / total, q - 2.0 ) / total;

        y.segment( space.block_begin( b ), space.block_size( b ) ) =
            x.segment( space.block_begin( b ), space.block_size( b ) ) * Scalar( w );
    }

    return y;
}

template < typename Derived >
Vector< typename Derived::Scalar >
duality_map ( const SpaceSpec &                     space,
              const Eigen::MatrixBase< Derived > &  x )
{
    return duality_map( space, x, space.p() );
}

//
// canonical projection Q_k onto block k, numbered from 1 with Q_0 = 0
//
template < typename Derived >
Vector< typename Derived::Scalar >
block_project ( const SpaceSpec &                     space,
                const Eigen::MatrixBase< Derived > &  x,
                const Index                           k )
{
    using Scalar = typename Derived::Scalar;

    detail::check_length( space, x );

    if ( k < 0 || k > space.num_blocks() )
        throw InvalidInput( "block index beyond block count" );

    Vector< Scalar >  y = Vector< Scalar >::Zero( x.size() );

    if ( k > 0 )
        y.segment( space.block_begin( k-1 ), space.block_size( k-1 ) ) =
            x.segment( space.block_begin( k-1 ), space.block_size( k-1 ) );

    return y;
}

}// namespace calkin

#endif  // CALKIN_SPACE_HPP
