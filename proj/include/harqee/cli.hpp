#pragma once

// Command-line front end. Every subcommand prints CSV.
//
//   harqee solve    --scheme cc --L 2 --rho 0.5 --eps 1e-2 --t0 2
//   harqee sweep    --config sweeps.ini [--out all.csv] [--workers N]
//   harqee simulate --scheme ir --L 3 --eps 1e-2 --t0 1 --trials 1e6 [--seed S]
//   harqee verify   --scheme all --L 2 --eps 1e-2 --t0 1 --trials 1e7 [--precision 0.05]
//   harqee limits   --rho 0.5 --t0 1 [--digits 6]
//
// Exit codes: 0 success, 2 usage or configuration error, 3 infeasible problem,
// invariant violation or insufficient simulation precision.

#include "harqee/csv.hpp"
#include "harqee/optimizer.hpp"
#include "harqee/sweep_config.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace harqee {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

/// A computed row failed its own constraint checks.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rows for every (scheme, axis value) of one sweep, schemes outermost.
/// Points are evaluated on up to `workers` threads; row order is fixed.
CsvTable run_sweep(const SweepConfig& cfg, unsigned workers = 0);

/// Header shared by every sweep table.
std::vector<std::string> sweep_header();

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace harqee
