#ifndef CALKIN_LAURENT_HPP
#define CALKIN_LAURENT_HPP

#include <map>
#include <string>

#include "calkin/common.hpp"

namespace calkin {

//
// f(w) = sum_n a_n w^n for n in [-d, d], a symbol on the unit circle.
// Exactly-zero coefficients are not stored.
//
class LaurentPolynomial
{
public:
    LaurentPolynomial () = default;
    explicit LaurentPolynomial ( const std::map< int, cplx > &  coeffs );

    static LaurentPolynomial  constant ( cplx  c );
    static LaurentPolynomial  monomial ( int  n, cplx  c = 1.0 );

    // "n:re,im" terms separated by ';' or whitespace, e.g. "-1:1,0; 0:3,0"
    static LaurentPolynomial  parse    ( const std::string &  text );

    std::string  to_string () const;

    const std::map< int, cplx > &  coefficients () const { return _coeffs; }

    cplx  coeff     ( int  n ) const;
    bool  is_zero   () const { return _coeffs.empty(); }

    // max |n| over nonzero coefficients (0 for constants)
    int   degree    () const;

    cplx  operator () ( cplx  w ) const;
    cplx  at_angle    ( double  theta ) const;

    // max / min of |f| over a uniform grid of the circle
    double  sup_circle ( int  grid = 4096 ) const;
    double  min_circle ( int  grid = 4096 ) const;

    // sum |a_n| and sum |n| |a_n|; the latter bounds |d f(e^{it}) / dt|
    double  coefficient_l1    () const;
    double  derivative_bound  () const;

    LaurentPolynomial &  operator += ( const LaurentPolynomial &  g );
    LaurentPolynomial &  operator *= ( cplx  c );

    friend LaurentPolynomial  operator + ( LaurentPolynomial  f, const LaurentPolynomial &  g ) { return f += g; }
    friend LaurentPolynomial  operator - ( LaurentPolynomial  f, const LaurentPolynomial &  g );
    friend LaurentPolynomial  operator * ( const LaurentPolynomial &  f, const LaurentPolynomial &  g );
    friend LaurentPolynomial  operator * ( cplx  c, LaurentPolynomial  f ) { return f *= c; }

    friend bool operator == ( const LaurentPolynomial &, const LaurentPolynomial & ) = default;

private:
    std::map< int, cplx >  _coeffs;
};

// (1-t) f + t g
LaurentPolynomial  interpolate ( const LaurentPolynomial &  f,
                                 const LaurentPolynomial &  g,
                                 double                     t );

//
// N x N finite section of f(U, U*) = sum_n a_n U^n (U^{-n} read as U*^n):
// entry (i, j) = a_{i-j}, no circulant wrap
//
MatrixXc  toeplitz_matrix ( const LaurentPolynomial &  f,
                            Index                      n );

}// namespace calkin

#endif  // CALKIN_LAURENT_HPP
