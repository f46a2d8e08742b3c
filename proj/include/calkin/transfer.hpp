#ifndef CALKIN_TRANSFER_HPP
#define CALKIN_TRANSFER_HPP
//
// Transfer of block tridiagonal operators from l2 to X_p: the block matrix is
// kept and only the norm context changes. Essential norms are replaced by
// norms of tail compressions (I - P_w) T (I - P_w), P_w the first w blocks.
//

#include <optional>
#include <random>
#include <vector>

#include "calkin/blockop.hpp"
#include "calkin/fredholm.hpp"
#include "calkin/laurent.hpp"
#include "calkin/pnorm.hpp"
#include "calkin/tridiag.hpp"

namespace calkin {

// same blocks, exponent <p>
template < typename Scalar >
BlockBandedOperator< Scalar >
psi ( const BlockBandedOperator< Scalar > &  t,
      const double                           p )
{
    return t.with_space( t.space().with_exponent( p ) );
}

template < typename Scalar >
NormEstimate< Scalar >
tail_norm ( const BlockBandedOperator< Scalar > &  t,
            const Index                            window,
            const Budget &                         budget,
            std::vector< Vector< Scalar > >        seeds = {} )
{
    if ( window < 0 || window >= t.num_blocks() )
        throw InvalidInput( "window must leave at least one block" );

    auto  tl = tail( t, window );

    for ( auto &  s : seeds )
        if ( s.size() != tl.space().dim() )
            s = Vector< Scalar >( s.tail( tl.space().dim() ) );

    return estimate_norm( tl, budget, std::move( seeds ) );
}

// estimated norm of (I - P_w) T (I - P_w)
template < typename Scalar >
double
essential_norm_proxy ( const BlockBandedOperator< Scalar > &  t,
                       const Index                            window,
                       const Budget &                         budget = {} )
{
    return tail_norm( t, window, budget ).lower;
}

//
// tail norms for several windows; every estimate is seeded with the witness
// of the next larger window, which keeps the profile non-increasing
//
template < typename Scalar >
std::vector< double >
tail_norm_profile ( const BlockBandedOperator< Scalar > &  t,
                    std::vector< Index >                   windows,
                    const Budget &                         budget = {} )
{
    std::vector< Index >  order = windows;

    std::sort( order.begin(), order.end() );

    std::vector< double >  values( order.size() );
    Vector< Scalar >       carried;

    for ( size_t k = order.size(); k-- > 0; )
    {
        std::vector< Vector< Scalar > >  seeds;

        if ( carried.size() > 0 )
        {
            const Index       dim = t.space().dim() - t.space().block_begin( order[k] );
            Vector< Scalar >  s   = Vector< Scalar >::Zero( dim );

            s.tail( carried.size() ) = carried;
            seeds.push_back( std::move( s ) );
        }

        auto  est = tail_norm( t, order[k], budget, std::move( seeds ) );

        values[k] = est.lower;
        carried   = est.witness;
    }

    // report in the caller's order
    std::vector< double >  out;

    for ( auto  w : windows )
        out.push_back( values[ size_t( std::lower_bound( order.begin(), order.end(), w ) - order.begin() ) ] );

    return out;
}

// number of leading blocks that lie inside the first floor(fraction * N) indices,
// capped so at least one block remains
Index  window_blocks ( const SpaceSpec &  space,
                       double             fraction );

// plane waves at the maximizer of |f|, flat and Hann-windowed
std::vector< VectorXc >  plane_wave_seeds ( const LaurentPolynomial &  f,
                                            Index                      dim );

class PlanExhausted : public Error
{
public:
    explicit PlanExhausted ( CutPlan  partial );

    CutPlan  plan;
};

struct ExperimentOptions
{
    double  p               = 4.0;
    Index   n               = 512;
    Budget  budget          = {};
    double  window_fraction = 0.25;
    double  ratio_tolerance = 0.05;
    Index   plain_n         = 0;      // size of the plain l^p section; 0 means n
};

struct TransferResult
{
    LaurentPolynomial     symbol;
    NormEstimate< cplx >  source_norm2;     // tail of Gamma(T_f) on l2
    NormEstimate< cplx >  target_norm_p;    // same blocks on X_p
    Index                 band              = 1;
    double                ratio_lower       = 0.0;
    double                ratio_upper       = 0.0;
    double                compression_residual = 0.0;
    bool                  within_bounds     = false;
};

struct CalculusExperiment
{
    LaurentPolynomial     symbol;
    double                sup_circle        = 0.0;
    CutPlan               plan;
    double                compression_residual = 0.0;
    Index                 window            = 0;      // blocks dropped from the transferred operator
    NormEstimate< cplx >  transferred_norm;
    NormEstimate< cplx >  plain_shift_norm;           // same Toeplitz section on plain l^p
    std::optional< int >  index_expected;             // -winding(f)
    TruncationIndex       index_observed;             // of the transferred operator
};

//
// T_f on l2, cut plan for { U, U*, T_f }, Gamma compression, transfer to
// X_p and the tail norm there; the plain l^p section of T_f for contrast
//
CalculusExperiment  run_calculus_experiment ( const LaurentPolynomial &  f,
                                              const ExperimentOptions &  opts );

//
// one shared cut plan for { U, U*, T_f1, T_f2, ... }; per symbol the tail norm
// of Gamma(T_f) on l2 and on X_p and their ratios
//
std::vector< TransferResult >  run_phi_pipeline ( const std::vector< LaurentPolynomial > &  family,
                                                  const ExperimentOptions &                 opts );

//
// || Gamma(A) Gamma(B) - Gamma(AB) ||_2 against the triangle-inequality budget
//
//   ||A - Gamma A|| ||Gamma B|| + ||A|| ||B - Gamma B|| + ||AB - Gamma(AB)||
//
struct HomomorphismDefect
{
    double  defect;
    double  budget;
    bool    within;
};

HomomorphismDefect  homomorphism_defect ( const MatrixXc &  a,
                                          const MatrixXc &  b,
                                          const CutPlan &   plan );

// degree uniform in [1, max_degree], complex Gaussian coefficients, scaled
// so that sup_circle() == 1
LaurentPolynomial  random_symbol ( std::mt19937_64 &  rng,
                                   int                max_degree );

// forward shift U as an N x N section
MatrixXc  forward_shift  ( Index  n );
MatrixXc  backward_shift ( Index  n );

}// namespace calkin

#endif  // CALKIN_TRANSFER_HPP
