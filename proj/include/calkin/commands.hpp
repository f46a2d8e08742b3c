#ifndef CALKIN_COMMANDS_HPP
#define CALKIN_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "calkin/common.hpp"

namespace calkin {

namespace exit_code
{
constexpr int  ok            = 0;
constexpr int  check_failed  = 1;
constexpr int  invalid_input = 2;
}

//
// Parameters shared by every experiment.  n == 0 selects the command's own
// default size; p is a list so one run can sweep several exponents.
//
struct CommonParams
{
    std::vector< double >   p      = { 4.0 };
    Index                   n      = 0;
    std::uint64_t           seed   = 1;
    int                     budget = 400;     // iterations per restart
    double                  window = 0.25;
    std::filesystem::path   out    = "calkin-out";
    bool                    check  = false;   // turn the command's assertions on
};

struct NormParams : CommonParams
{
    std::filesystem::path  input;       // operator JSON header or dense CSV; empty = random
    Index                  width = 2;   // block width for dense / random input
    Index                  band  = 1;   // block band for dense / random input
};

struct TridiagParams : CommonParams
{
    std::vector< std::filesystem::path >  matrices;   // empty = built-in family
};

struct TransferParams : CommonParams
{
    int     count      = 50;
    int     max_degree = 16;
    Index   plain_n    = 256;
    double  tolerance  = 0.05;
    bool    svg        = false;
};

struct IndexParams : CommonParams
{
    std::vector< std::string >  symbols;    // empty = built-in list
};

struct KhintchineParams : CommonParams
{
    int  n_max = 10;
};

struct CommandResult
{
    int                                   status = exit_code::ok;
    std::vector< std::filesystem::path >  inputs;
    std::vector< std::filesystem::path >  outputs;
    std::vector< std::string >            failures;
};

//
// Each command writes its artifacts below params.out.
//
//   norm                 norm.json
//   tridiag              plan.json, residuals.csv   (k,i,residual,limit,seed)
//   transfer-experiment  transfer.csv, summary.json, transfer.svg (optional)
//   index                index.json
//   khintchine           khintchine.csv             (n,p,lower,upper,projection_norm,seed)
//
CommandResult  run_norm       ( const NormParams &        params );
CommandResult  run_tridiag    ( const TridiagParams &     params );
CommandResult  run_transfer   ( const TransferParams &    params );
CommandResult  run_index      ( const IndexParams &       params );
CommandResult  run_khintchine ( const KhintchineParams &  params );

//
// Batch run from a JSON config:
//
//   { "seed": 1, "budget": 400, "out": "dir",
//     "experiments": [ { "name": "...", "command": "transfer-experiment", ... } ] }
//
// Experiments run in name order, each into out/<name>; out/manifest.json lists
// the SHA-256 of the config, every input and every output file.
//
CommandResult  run_suite ( const std::filesystem::path &  config,
                           const std::filesystem::path &  out_override = {} );

}// namespace calkin

#endif  // CALKIN_COMMANDS_HPP
