#ifndef CALKIN_FREDHOLM_HPP
#define CALKIN_FREDHOLM_HPP

#include <optional>
#include <vector>

#include "calkin/blockop.hpp"
#include "calkin/laurent.hpp"

namespace calkin {

class NotInvertible : public Error
{
public:
    using Error::Error;
};

//
// winding number of f(e^{it}) around 0; the Toeplitz operator of f has
// Fredholm index -winding(f). The grid is refined until every step turns
// the argument by less than pi/2.
//
int  winding ( const LaurentPolynomial &  f,
               int                        grid = 4096 );

//
// dim ker T - dim ker T* read off rectangular sections: the columns of all
// but the last <band> blocks against all rows, so every kept column sees its
// full image. A singular value counts as zero below threshold * sigma_max.
//
struct TruncationIndex
{
    int                    value        = 0;
    bool                   converged    = false;
    Index                  kernel_dim   = 0;
    Index                  cokernel_dim = 0;
    Index                  context      = 0;      // trailing blocks used as context
    double                 gap          = 0.0;    // smallest nonzero / largest zero singular value
    std::vector< double >  smallest_forward;      // near-zero diagnostics, ascending
    std::vector< double >  smallest_adjoint;
};

TruncationIndex  truncation_index ( const BlockBandedOperator< cplx > &  t,
                                    double                               threshold = 1e-6 );

struct IndexReport
{
    LaurentPolynomial     symbol;
    std::optional< int >  winding_index;      // -winding(f); empty when f vanishes on the circle
    TruncationIndex       truncation;
    bool                  agree = false;
};

// both index routes for the N x N Toeplitz section of f on unit cuts
IndexReport  index_report ( const LaurentPolynomial &  f,
                            Index                      n,
                            double                     threshold = 1e-6 );

//
// linear path (1-t) start + t end sampled at t = k / steps
//
struct SymbolPath
{
    LaurentPolynomial  start;
    LaurentPolynomial  end;
    int                steps = 64;

    double             t      ( int  k ) const { return double( k ) / steps; }
    LaurentPolynomial  at     ( int  k ) const { return interpolate( start, end, t( k ) ); }
};

class PathRejected : public Error
{
public:
    PathRejected ( int  step, double  t, double  min_modulus, bool  vanishes );

    int     step;
    double  t;
    double  min_modulus;
    bool    vanishes;     // min |f| on the grid is numerically zero
};

//
// A path is accepted when every sampled symbol keeps |f| above the margin
//
//   L dt / 2 + D h / 2,   L = sum |end_n - start_n|,  D = max sum |n| |a_n|,
//
// with dt the step and h the grid spacing. Then f_t(e^{iθ}) cannot vanish
// anywhere on [0,1] x circle, so the winding number is constant.
//
void  validate_path ( const SymbolPath &  path,
                      int                 grid = 4096 );

struct PathIndex
{
    bool                constant = false;
    std::vector< int >  indices;               // Toeplitz index -winding at every step
};

PathIndex  path_index_constancy ( const SymbolPath &  path,
                                  int                 grid = 4096 );

}// namespace calkin

#endif  // CALKIN_FREDHOLM_HPP
