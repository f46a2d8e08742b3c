#ifndef CALKIN_TRIDIAG_HPP
#define CALKIN_TRIDIAG_HPP
//
// Simultaneous block tridiagonalization of a finite family T_1, ..., T_M.
//
// Cuts 0 = r_1 < r_2 < ... are chosen greedily: r_m is the smallest integer
// beyond r_{m-1} with
//
//   || (I - P_{r_m}) T_i  P_{r_{m-1}} || <= eps_m
//   || (I - P_{r_m}) T_i* P_{r_{m-1}} || <= eps_m      for all i <= min(m, M)
//
// where P_r projects onto the first r coordinates. Cut and block numbers in
// this module are 1-based, matching r_1 = 0 and Q_0 = 0.
//

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "calkin/blockop.hpp"
#include "calkin/common.hpp"
#include "calkin/space.hpp"

namespace calkin {

using Schedule = std::function< double ( Index ) >;

// eps_m = 2^{-(m+1)}
inline double
default_schedule ( const Index  m )
{
    return std::ldexp( 1.0, -int( m + 1 ) );
}

struct TailBound
{
    Index   m;          // step producing r_m
    Index   i;          // family member
    double  forward;    // || (I - P_{r_m}) T_i  P_{r_{m-1}} ||
    double  adjoint;    // || (I - P_{r_m}) T_i* P_{r_{m-1}} ||
};

struct CutPlan
{
    std::vector< Index >      cuts;           // r_1 = 0, r_2, ..., last = N
    Index                     family_size = 0;
    std::vector< double >     epsilon;        // epsilon[m] for m >= 2, entries 0 and 1 unused
    std::vector< TailBound >  tail_bounds;
    bool                      exhausted   = false;

    Index      num_cuts   () const { return Index( cuts.size() ); }
    Index      num_blocks () const { return Index( cuts.size() ) - 1; }
    Index      dim        () const { return cuts.back(); }

    // 1-based r_m; 0 for m <= 1 and N past the last cut
    Index
    r ( const Index  m ) const
    {
        if ( m <= 1 )         return 0;
        if ( m > num_cuts() ) return dim();

        return cuts[ size_t( m - 1 ) ];
    }

    SpaceSpec  space      ( const double  p = 2.0 ) const { return SpaceSpec( p, cuts ); }
};

namespace detail {

template < typename Scalar >
double
forward_tail ( const Matrix< Scalar > &  t,
               const Index               r,
               const Index               rprev )
{
    return double( spectral_norm( t.bottomLeftCorner( t.rows() - r, rprev ) ) );
}

// (I - P_r) T* P_rprev is the adjoint of P_rprev T (I - P_r)
template < typename Scalar >
double
adjoint_tail ( const Matrix< Scalar > &  t,
               const Index               r,
               const Index               rprev )
{
    return double( spectral_norm( t.topRightCorner( rprev, t.cols() - r ) ) );
}

}// namespace detail

//
// The finite family takes the place of a dense sequence: member i enters the
// constraints at step m = i. The plan always reaches N because (I - P_N)
// vanishes on the truncation; it is flagged exhausted when N is reached
// before step M + 2, i.e. before every member had its tridiagonal error
// certified for at least one block.
//
template < typename Scalar >
CutPlan
choose_cuts ( std::span< const Matrix< Scalar > >  family,
              const Index                          n,
              const Schedule &                     schedule = default_schedule )
{
    if ( family.empty() )
        throw InvalidInput( "cut selection needs a nonempty family" );

    for ( const auto &  t : family )
        if ( t.rows() != n || t.cols() != n )
            throw InvalidInput( "every family member must be N x N" );

    const Index  nfam = Index( family.size() );

    CutPlan  plan;

    plan.family_size = nfam;
    plan.cuts        = { 0 };
    plan.epsilon     = { 0.0, 0.0 };

    while ( plan.cuts.back() < n )
    {
        const Index   m     = plan.num_cuts() + 1;
        const Index   rprev = plan.cuts.back();
        const Index   limit = std::min( m, nfam );
        const double  eps   = schedule( m );

        auto  feasible = [&] ( const Index  r )
        {
            for ( Index i = 0; i < limit; ++i )
                if ( detail::forward_tail( family[i], r, rprev ) > eps ||
                     detail::adjoint_tail( family[i], r, rprev ) > eps )
                    return false;

            return true;
        };

        // both tails are non-increasing in r and r = N is always feasible
        Index  lo = rprev + 1;
        Index  hi = n;

        while ( lo < hi )
        {
            const Index  mid = lo + ( hi - lo ) / 2;

            if ( feasible( mid ) ) hi = mid;
            else                   lo = mid + 1;
        }

        plan.cuts.push_back( lo );
        plan.epsilon.push_back( eps );

        for ( Index i = 0; i < limit; ++i )
            plan.tail_bounds.push_back( { m, i + 1,
                                          detail::forward_tail( family[i], lo, rprev ),
                                          detail::adjoint_tail( family[i], lo, rprev ) } );
    }

    plan.exhausted = plan.num_cuts() < nfam + 2;

    return plan;
}

template < typename Scalar >
CutPlan
choose_cuts ( const std::vector< Matrix< Scalar > > &  family,
              const Index                              n,
              const Schedule &                         schedule = default_schedule )
{
    return choose_cuts( std::span< const Matrix< Scalar > >( family ), n, schedule );
}

namespace detail {

template < typename Scalar >
void
check_plan ( const Matrix< Scalar > &  t,
             const CutPlan &           plan )
{
    if ( t.rows() != t.cols() || t.rows() != plan.dim() )
        throw InvalidInput( "matrix size does not match the cut plan" );
}

}// namespace detail

//
// || (I - (Q_{k-1} + Q_k + Q_{k+1})) T Q_k ||  for block k = 1, ..., K
//
template < typename Scalar >
double
column_residual ( const Matrix< Scalar > &  t,
                  const CutPlan &           plan,
                  const Index               k )
{
    const Index  lo = plan.r( k - 1 );
    const Index  hi = plan.r( k + 2 );
    const Index  c0 = plan.r( k );
    const Index  nc = plan.r( k + 1 ) - c0;

    std::vector< Index >  rows;

    for ( Index i = 0; i < lo; ++i )
        rows.push_back( i );

    for ( Index i = hi; i < plan.dim(); ++i )
        rows.push_back( i );

    if ( rows.empty() )
        return 0.0;

    const Matrix< Scalar >  sub = t( rows, Eigen::seqN( c0, nc ) );

    return double( spectral_norm( sub ) );
}

template < typename Scalar >
struct Compression
{
    BlockBandedOperator< Scalar >  gamma;           // band 1 w.r.t. the plan
    double                         residual_norm;   // || T - gamma ||_2
};

//
// Gamma(T) = sum_k (Q_{k-1} + Q_k + Q_{k+1}) T Q_k
//
template < typename Scalar >
Compression< Scalar >
compress ( const Matrix< Scalar > &  t,
           const CutPlan &           plan )
{
    detail::check_plan( t, plan );

    auto  blocked = from_dense( t, plan.space( 2.0 ), 1 );

    return { std::move( blocked.op ), blocked.discarded_norm };
}

struct TridiagCheck
{
    Index   k;
    double  value;   // || (I - (P_{r_{k+2}} - P_{r_{k-1}})) T_i (P_{r_{k+1}} - P_{r_k}) ||
    double  limit;   // eps_k + eps_{k+2}, below 2^{-k} for the default schedule
    bool    pass;
};

//
// recheck the column-block residuals of family member <i> for k >= i with
// r_{k+2} inside the plan against the bound the construction guarantees
//
template < typename Scalar >
std::vector< TridiagCheck >
verify_tridiag_error ( const Matrix< Scalar > &  t,
                       const Index               i,
                       const CutPlan &           plan )
{
    detail::check_plan( t, plan );

    std::vector< TridiagCheck >  out;

    for ( Index k = std::max< Index >( i, 1 ); k + 2 <= plan.num_cuts(); ++k )
    {
        const double  eps_k  = k >= 2 ? plan.epsilon[ size_t( k ) ] : 0.0;
        const double  eps_k2 = plan.epsilon[ size_t( k + 2 ) ];
        const double  value  = column_residual( t, plan, k );
        const double  limit  = eps_k + eps_k2;

        out.push_back( { k, value, limit, value <= limit } );
    }

    return out;
}

template < typename Scalar >
struct TridiagReport
{
    CutPlan                                       plan;
    std::vector< std::vector< double > >          residuals;   // [i][k-1]
    std::vector< BlockBandedOperator< Scalar > >  gammas;
    std::vector< double >                         residual_norms;
};

template < typename Scalar >
TridiagReport< Scalar >
tridiagonalize ( const std::vector< Matrix< Scalar > > &  family,
                 const Index                              n,
                 const Schedule &                         schedule = default_schedule )
{
    TridiagReport< Scalar >  rep{ choose_cuts( family, n, schedule ), {}, {}, {} };

    for ( const auto &  t : family )
    {
        std::vector< double >  res;

        for ( Index k = 1; k <= rep.plan.num_blocks(); ++k )
            res.push_back( column_residual( t, rep.plan, k ) );

        auto  c = compress( t, rep.plan );

        rep.residuals.push_back( std::move( res ) );
        rep.gammas.push_back( std::move( c.gamma ) );
        rep.residual_norms.push_back( c.residual_norm );
    }

    return rep;
}

}// namespace calkin

#endif  // CALKIN_TRIDIAG_HPP
