#ifndef CALKIN_IO_HPP
#define CALKIN_IO_HPP
//
// JSON / CSV formats
//
//   SpaceSpec      {"p": number, "cuts": [ints]}
//   vectors        one "re,im" row per entry
//   dense matrix   one row per matrix row: re,im,re,im,... (a purely real
//                  matrix with N columns per row is accepted on input)
//   operator       JSON header {"space", "band", "payload"} plus a CSV payload
//                  with rows i,j,row,col,re,im for the nonzero block entries
//

#include <filesystem>
#include <string>

#include <json.hpp>

#include "calkin/blockop.hpp"
#include "calkin/fredholm.hpp"
#include "calkin/pelczynski.hpp"
#include "calkin/pnorm.hpp"
#include "calkin/space.hpp"
#include "calkin/transfer.hpp"
#include "calkin/tridiag.hpp"

namespace calkin {

using json = nlohmann::ordered_json;

// fixed-width number formatting used for every CSV cell
std::string  format_number ( double  v );

json       to_json        ( const SpaceSpec &  space );
SpaceSpec  space_from_json ( const json &  j );

json  to_json ( const NormEstimate< cplx > &  e,
                bool                          with_witness = true );
json  to_json ( const CutPlan &  plan );
json  to_json ( const TruncationIndex &  ti );
json  to_json ( const IndexReport &  rep );
json  to_json ( const KhintchineConstants &  kc );

MatrixXc  read_matrix_csv  ( const std::filesystem::path &  path );
void      write_matrix_csv ( const std::filesystem::path &  path,
                             const MatrixXc &               m );

VectorXc  read_vector_csv  ( const std::filesystem::path &  path );
void      write_vector_csv ( const std::filesystem::path &  path,
                             const VectorXc &               v );

void      save_operator    ( const BlockBandedOperator< cplx > &  t,
                             const std::filesystem::path &        header );
BlockBandedOperator< cplx >
          load_operator    ( const std::filesystem::path &  header );

void      write_text       ( const std::filesystem::path &  path,
                             const std::string &            text );
std::string  read_text     ( const std::filesystem::path &  path );

// hex SHA-256 of a file's bytes
std::string  sha256_file   ( const std::filesystem::path &  path );

}// namespace calkin

#endif  // CALKIN_IO_HPP
