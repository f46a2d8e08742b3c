#include "calkin/blockop.hpp"

#include <fmt/format.h>

namespace calkin {

BlockBandedOperator< cplx >
toeplitz ( const LaurentPolynomial &  f,
           const SpaceSpec &          space,
           std::optional< Index >     max_band )
{
    const Index  band = minimal_band( space, f.degree() );

    if ( max_band && band > *max_band )
        throw InvalidInput( fmt::format( "symbol of degree {} needs block band {} but at most {} is allowed",
                                         f.degree(), band, *max_band ) );

    auto  blocked = from_dense( toeplitz_matrix( f, space.dim() ), space, band );

    return std::move( blocked.op );
}

}// namespace calkin
