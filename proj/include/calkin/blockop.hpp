#ifndef CALKIN_BLOCKOP_HPP
#define CALKIN_BLOCKOP_HPP
//
// Banded block operators on a SpaceSpec: block T(i,j) maps block j into
// block i and vanishes whenever |i-j| > band.
//

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "calkin/common.hpp"
#include "calkin/laurent.hpp"
#include "calkin/space.hpp"

namespace calkin {

template < typename Scalar = cplx >
class BlockBandedOperator
{
public:
    using scalar_type = Scalar;
    using matrix_type = Matrix< Scalar >;

    // zero operator with storage for every in-band block
    BlockBandedOperator ( SpaceSpec  space,
                          Index      band )
            : _space( std::move( space ) )
            , _band( std::clamp< Index >( band, 0, std::max< Index >( _space.num_blocks() - 1, 0 ) ) )
    {
        if ( band < 0 )
            throw InvalidInput( "band must be non-negative" );

        const Index  nb = _space.num_blocks();

        _blocks.resize( size_t( nb * width() ) );
        _norms.assign( _blocks.size(), 0.0 );

        for ( Index j = 0; j < nb; ++j )
            for ( Index i = std::max< Index >( 0, j - _band ); i <= std::min( nb - 1, j + _band ); ++i )
                _blocks[ slot( i, j ) ] = matrix_type::Zero( _space.block_size( i ), _space.block_size( j ) );
    }

    static BlockBandedOperator
    identity ( const SpaceSpec &  space )
    {
        BlockBandedOperator  id( space, 0 );

        for ( Index b = 0; b < space.num_blocks(); ++b )
            id.set_block( b, b, matrix_type::Identity( space.block_size( b ), space.block_size( b ) ) );

        return id;
    }

    const SpaceSpec &  space       () const { return _space; }
    Index              band        () const { return _band; }
    Index              num_blocks  () const { return _space.num_blocks(); }

    bool
    in_band ( const Index  i,
              const Index  j ) const
    {
        return i >= 0 && j >= 0 && i < num_blocks() && j < num_blocks() && std::abs( i - j ) <= _band;
    }

    const matrix_type &
    block ( const Index  i,
            const Index  j ) const
    {
        if ( ! in_band( i, j ) )
            throw InvalidInput( "block outside the band" );

        return _blocks[ slot( i, j ) ];
    }

    void
    set_block ( const Index    i,
                const Index    j,
                matrix_type    m )
    {
        if ( ! in_band( i, j ) )
            throw InvalidInput( "block outside the band" );

        if ( m.rows() != _space.block_size( i ) || m.cols() != _space.block_size( j ) )
            throw InvalidInput( "block shape does not match the cuts" );

        _norms[ slot( i, j ) ]  = double( spectral_norm( m ) );
        _blocks[ slot( i, j ) ] = std::move( m );
    }

    // l2 -> l2 norm of block (i,j); zero outside the band
    double
    block_norm ( const Index  i,
                 const Index  j ) const
    {
        return in_band( i, j ) ? _norms[ slot( i, j ) ] : 0.0;
    }

    double
    sup_block_norm () const
    {
        return _norms.empty() ? 0.0 : *std::max_element( _norms.begin(), _norms.end() );
    }

    // sup_j || T(j+s, j) ||
    double
    diagonal_sup ( const Index  s ) const
    {
        double  best = 0.0;

        for ( Index j = 0; j < num_blocks(); ++j )
            best = std::max( best, block_norm( j + s, j ) );

        return best;
    }

    matrix_type
    assemble () const
    {
        matrix_type  a = matrix_type::Zero( _space.dim(), _space.dim() );

        for_each_block( [&] ( Index i, Index j, const matrix_type &  blk )
        {
            a.block( _space.block_begin( i ), _space.block_begin( j ), blk.rows(), blk.cols() ) = blk;
        } );

        return a;
    }

    // same block data bound to a space with identical cuts
    BlockBandedOperator
    with_space ( const SpaceSpec &  space ) const
    {
        if ( ! space.same_blocks( _space ) )
            throw InvalidInput( "rebinding requires identical cuts" );

        BlockBandedOperator  t( *this );

        t._space = space;

        return t;
    }

    template < typename Fn >
    void
    for_each_block ( Fn &&  fn ) const
    {
        for ( Index j = 0; j < num_blocks(); ++j )
            for ( Index i = std::max< Index >( 0, j - _band ); i <= std::min( num_blocks() - 1, j + _band ); ++i )
                fn( i, j, _blocks[ slot( i, j ) ] );
    }

private:
    Index  width () const { return 2 * _band + 1; }
    size_t slot  ( Index i, Index j ) const { return size_t( j * width() + ( i - j + _band ) ); }

private:
    SpaceSpec                   _space;
    Index                       _band;
    std::vector< matrix_type >  _blocks;
    std::vector< double >       _norms;
};

//
// blocking of a dense matrix along the cuts
//
template < typename Scalar >
struct BlockedMatrix
{
    BlockBandedOperator< Scalar >  op;
    double                         discarded_norm;   // l2 norm of the out-of-band part
};

template < typename Derived >
BlockedMatrix< typename Derived::Scalar >
from_dense ( const Eigen::MatrixBase< Derived > &  a,
             const SpaceSpec &                     space,
             const Index                           band )
{
    using Scalar = typename Derived::Scalar;

    if ( a.rows() != space.dim() || a.cols() != space.dim() )
        throw InvalidInput( "matrix shape does not match space dimension" );

    BlockBandedOperator< Scalar >  op( space, band );
    Matrix< Scalar >               rest = a;

    for ( Index j = 0; j < space.num_blocks(); ++j )
        for ( Index i = 0; i < space.num_blocks(); ++i )
        {
            if ( ! op.in_band( i, j ) )
                continue;

            auto  blk = rest.block( space.block_begin( i ), space.block_begin( j ),
                                    space.block_size( i ), space.block_size( j ) );

            op.set_block( i, j, blk );
            blk.setZero();
        }

    const double  discarded = double( spectral_norm( rest ) );

    return { std::move( op ), discarded };
}

namespace detail {

template < typename Scalar >
void
check_same_space ( const SpaceSpec &  space,
                   const SpaceSpec &  other )
{
    if ( ! space.same_blocks( other ) )
        throw InvalidInput( "operators live on different spaces" );
}

// forwarding references make these overloads more specialized than std::apply,
// which argument-dependent lookup also finds through std::complex
template < typename X >
concept eigen_dense = std::is_base_of_v< Eigen::DenseBase< std::remove_cvref_t< X > >, std::remove_cvref_t< X > >;

}// namespace detail

//
// y_i = sum_j T(i,j) x_j
//
template < typename Scalar, typename X >
    requires detail::eigen_dense< X >
Vector< Scalar >
apply ( const BlockBandedOperator< Scalar > &  t,
        X &&                                   x )
{
    const auto &  sp = t.space();

    if ( x.size() != sp.dim() )
        throw InvalidInput( "vector does not live on the operator's space" );

    Vector< Scalar >  y = Vector< Scalar >::Zero( sp.dim() );

    t.for_each_block( [&] ( Index i, Index j, const Matrix< Scalar > &  blk )
    {
        y.segment( sp.block_begin( i ), blk.rows() ).noalias() += blk * x.segment( sp.block_begin( j ), blk.cols() );
    } );

    return y;
}

template < typename Scalar, typename X >
    requires detail::eigen_dense< X >
Vector< Scalar >
apply_adjoint ( const BlockBandedOperator< Scalar > &  t,
                X &&                                   x )
{
    const auto &  sp = t.space();

    if ( x.size() != sp.dim() )
        throw InvalidInput( "vector does not live on the operator's space" );

    Vector< Scalar >  y = Vector< Scalar >::Zero( sp.dim() );

    t.for_each_block( [&] ( Index i, Index j, const Matrix< Scalar > &  blk )
    {
        y.segment( sp.block_begin( j ), blk.cols() ).noalias() += blk.adjoint() * x.segment( sp.block_begin( i ), blk.rows() );
    } );

    return y;
}

//
// sup_{i,j} ||T(i,j)|| <= ||T||_{X_p} <= (2m+1) sup_{i,j} ||T(i,j)||
//
// The witness is the top right-singular vector of a maximizing block placed in
// its column block; it attains the lower bound for every p.
//
template < typename Scalar >
struct NormSandwich
{
    double            lower;
    double            upper;
    Vector< Scalar >  witness;
    Index             row_block;
    Index             col_block;
};

template < typename Scalar >
NormSandwich< Scalar >
norm_sandwich ( const BlockBandedOperator< Scalar > &  t )
{
    const auto &  sp = t.space();

    NormSandwich< Scalar >  s{ 0.0, 0.0, Vector< Scalar >::Zero( sp.dim() ), 0, 0 };

    t.for_each_block( [&] ( Index i, Index j, const Matrix< Scalar > & )
    {
        if ( t.block_norm( i, j ) > s.lower )
        {
            s.lower     = t.block_norm( i, j );
            s.row_block = i;
            s.col_block = j;
        }
    } );

    s.upper = double( 2 * t.band() + 1 ) * s.lower;

    if ( s.lower > 0 )
        s.witness.segment( sp.block_begin( s.col_block ), sp.block_size( s.col_block ) ) =
            top_right_singular_vector( t.block( s.row_block, s.col_block ) );
    else
        s.witness( 0 ) = Scalar( 1 );

    return s;
}

template < typename Scalar >
BlockBandedOperator< Scalar >
compose ( const BlockBandedOperator< Scalar > &  a,
          const BlockBandedOperator< Scalar > &  b )
{
    detail::check_same_space< Scalar >( a.space(), b.space() );

    BlockBandedOperator< Scalar >  c( a.space(), a.band() + b.band() );
    const Index                    nb = a.num_blocks();

    for ( Index j = 0; j < nb; ++j )
        for ( Index i = std::max< Index >( 0, j - c.band() ); i <= std::min( nb - 1, j + c.band() ); ++i )
        {
            Matrix< Scalar >  sum = Matrix< Scalar >::Zero( a.space().block_size( i ), a.space().block_size( j ) );
            bool              any = false;

            for ( Index k = std::max< Index >( 0, j - b.band() ); k <= std::min( nb - 1, j + b.band() ); ++k )
            {
                if ( ! a.in_band( i, k ) )
                    continue;

                sum.noalias() += a.block( i, k ) * b.block( k, j );
                any = true;
            }

            if ( any )
                c.set_block( i, j, std::move( sum ) );
        }

    return c;
}

template < typename Scalar >
BlockBandedOperator< Scalar >
adjoint ( const BlockBandedOperator< Scalar > &  t )
{
    BlockBandedOperator< Scalar >  a( t.space(), t.band() );

    t.for_each_block( [&] ( Index i, Index j, const Matrix< Scalar > &  blk )
    {
        a.set_block( j, i, blk.adjoint() );
    } );

    return a;
}

template < typename Scalar >
BlockBandedOperator< Scalar >
operator + ( const BlockBandedOperator< Scalar > &  a,
             const BlockBandedOperator< Scalar > &  b )
{
    detail::check_same_space< Scalar >( a.space(), b.space() );

    BlockBandedOperator< Scalar >  c( a.space(), std::max( a.band(), b.band() ) );

    c.for_each_block( [&] ( Index i, Index j, const Matrix< Scalar > &  blk )
    {
        Matrix< Scalar >  sum = blk;

        if ( a.in_band( i, j ) ) sum += a.block( i, j );
        if ( b.in_band( i, j ) ) sum += b.block( i, j );

        c.set_block( i, j, std::move( sum ) );
    } );

    return c;
}

template < typename Scalar >
BlockBandedOperator< Scalar >
operator * ( const Scalar                           alpha,
             const BlockBandedOperator< Scalar > &  t )
{
    BlockBandedOperator< Scalar >  c( t.space(), t.band() );

    t.for_each_block( [&] ( Index i, Index j, const Matrix< Scalar > &  blk )
    {
        c.set_block( i, j, alpha * blk );
    } );

    return c;
}

template < typename Scalar >
BlockBandedOperator< Scalar >
operator * ( const BlockBandedOperator< Scalar > &  a,
             const BlockBandedOperator< Scalar > &  b )
{
    return compose( a, b );
}

//
// compression (I - P_w) T (I - P_w) restricted to the blocks first, first+1, ...
//
template < typename Scalar >
BlockBandedOperator< Scalar >
tail ( const BlockBandedOperator< Scalar > &  t,
       const Index                            first )
{
    BlockBandedOperator< Scalar >  r( t.space().tail( first ), t.band() );

    t.for_each_block( [&] ( Index i, Index j, const Matrix< Scalar > &  blk )
    {
        if ( i >= first && j >= first )
            r.set_block( i - first, j - first, blk );
    } );

    return r;
}

//
// smallest block band holding every entry (i,j) with |i-j| <= offset
//
inline Index
minimal_band ( const SpaceSpec &  space,
               const Index        offset )
{
    Index  band = 0;

    for ( Index b = 0; b < space.num_blocks(); ++b )
    {
        // column block b holds entries in rows block_begin(b)-offset ... block_end(b)-1+offset
        const Index  first = std::max< Index >( 0, space.block_begin( b ) - offset );
        const Index  last  = std::min( space.dim() - 1, space.block_end( b ) - 1 + offset );

        band = std::max( { band, space.block_of( last ) - b, b - space.block_of( first ) } );
    }

    return band;
}

//
// finite section of f(U, U*) blocked along <space> with the minimal band;
// fails when the required band exceeds <max_band>
//
BlockBandedOperator< cplx >  toeplitz ( const LaurentPolynomial &  f,
                                        const SpaceSpec &          space,
                                        std::optional< Index >     max_band = std::nullopt );

}// namespace calkin

#endif  // CALKIN_BLOCKOP_HPP
