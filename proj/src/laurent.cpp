#include "calkin/laurent.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

namespace calkin {

LaurentPolynomial::LaurentPolynomial ( const std::map< int, cplx > &  coeffs )
{
    for ( auto [ n, a ] : coeffs )
        if ( a != cplx( 0 ) )
            _coeffs[n] = a;
}

LaurentPolynomial
LaurentPolynomial::constant ( cplx  c )
{
    return LaurentPolynomial( { { 0, c } } );
}

LaurentPolynomial
LaurentPolynomial::monomial ( int  n, cplx  c )
{
    return LaurentPolynomial( { { n, c } } );
}

LaurentPolynomial
LaurentPolynomial::parse ( const std::string &  text )
{
    std::string  buf = text;

    for ( auto &  ch : buf )
        if ( ch == ';' )
            ch = ' ';

    std::istringstream     in( buf );
    std::string            term;
    std::map< int, cplx >  coeffs;

    while ( in >> term )
    {
        const auto  colon = term.find( ':' );

        if ( colon == std::string::npos )
            throw InvalidInput( "symbol term '" + term + "' is not of the form n:re,im" );

        try
        {
            const int          n     = std::stoi( term.substr( 0, colon ) );
            const std::string  value = term.substr( colon + 1 );
            const auto         comma = value.find( ',' );
            const double       re    = std::stod( value.substr( 0, comma ) );
            const double       im    = comma == std::string::npos ? 0.0 : std::stod( value.substr( comma + 1 ) );

            coeffs[n] += cplx( re, im );
        }
        catch ( const std::logic_error & )
        {
            throw InvalidInput( "cannot parse symbol term '" + term + "'" );
        }
    }

    return LaurentPolynomial( coeffs );
}

std::string
LaurentPolynomial::to_string () const
{
    std::string  out;

    for ( auto [ n, a ] : _coeffs )
    {
        if ( ! out.empty() )
            out += ';';

        out += fmt::format( "{}:{:.10g},{:.10g}", n, a.real(), a.imag() );
    }

    return out.empty() ? "0:0,0" : out;
}

cplx
LaurentPolynomial::coeff ( int  n ) const
{
    auto  it = _coeffs.find( n );

    return it == _coeffs.end() ? cplx( 0 ) : it->second;
}

int
LaurentPolynomial::degree () const
{
    int  d = 0;

    for ( auto &  [ n, a ] : _coeffs )
        d = std::max( d, std::abs( n ) );

    return d;
}

cplx
LaurentPolynomial::operator () ( cplx  w ) const
{
    cplx  sum = 0;

    for ( auto [ n, a ] : _coeffs )
        sum += a * std::pow( w, n );

    return sum;
}

cplx
LaurentPolynomial::at_angle ( double  theta ) const
{
    cplx  sum = 0;

    for ( auto [ n, a ] : _coeffs )
        sum += a * std::polar( 1.0, n * theta );

    return sum;
}

double
LaurentPolynomial::sup_circle ( int  grid ) const
{
    double  best = 0.0;

    for ( int  k = 0; k < grid; ++k )
        best = std::max( best, std::abs( at_angle( 2.0 * std::numbers::pi * k / grid ) ) );

    return best;
}

double
LaurentPolynomial::min_circle ( int  grid ) const
{
    double  best = std::numeric_limits< double >::infinity();

    for ( int  k = 0; k < grid; ++k )
        best = std::min( best, std::abs( at_angle( 2.0 * std::numbers::pi * k / grid ) ) );

    return best;
}

double
LaurentPolynomial::coefficient_l1 () const
{
    double  sum = 0.0;

    for ( auto [ n, a ] : _coeffs )
        sum += std::abs( a );

    return sum;
}

double
LaurentPolynomial::derivative_bound () const
{
    double  sum = 0.0;

    for ( auto [ n, a ] : _coeffs )
        sum += std::abs( n ) * std::abs( a );

    return sum;
}

LaurentPolynomial &
LaurentPolynomial::operator += ( const LaurentPolynomial &  g )
{
    for ( auto [ n, a ] : g._coeffs )
    {
        auto  v = coeff( n ) + a;

        if ( v == cplx( 0 ) ) _coeffs.erase( n );
        else                  _coeffs[n] = v;
    }

    return *this;
}

LaurentPolynomial &
LaurentPolynomial::operator *= ( cplx  c )
{
    if ( c == cplx( 0 ) )
    {
        _coeffs.clear();
        return *this;
    }

    for ( auto &  [ n, a ] : _coeffs )
        a *= c;

    return *this;
}

LaurentPolynomial
operator - ( LaurentPolynomial  f, const LaurentPolynomial &  g )
{
    return f += cplx( -1 ) * g;
}

LaurentPolynomial
operator * ( const LaurentPolynomial &  f, const LaurentPolynomial &  g )
{
    std::map< int, cplx >  prod;

    for ( auto [ n, a ] : f._coeffs )
        for ( auto [ k, b ] : g._coeffs )
            prod[n + k] += a * b;

    return LaurentPolynomial( prod );
}

LaurentPolynomial
interpolate ( const LaurentPolynomial &  f,
              const LaurentPolynomial &  g,
              double                     t )
{
    return cplx( 1.0 - t ) * f + cplx( t ) * g;
}

MatrixXc
toeplitz_matrix ( const LaurentPolynomial &  f,
                  Index                      n )
{
    if ( n <= 0 )
        throw InvalidInput( "Toeplitz truncation needs N > 0" );

    MatrixXc  t = MatrixXc::Zero( n, n );

    for ( auto [ off, a ] : f.coefficients() )
        for ( Index  j = 0; j < n; ++j )
        {
            const Index  i = j + off;

            if ( i >= 0 && i < n )
                t( i, j ) = a;
        }

    return t;
}

}// namespace calkin
