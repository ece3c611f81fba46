/**
 * @file cli.hpp
 * @brief The flatcurve command line, callable in-process.
 *
 *   flatcurve <subcommand> [--sequence NAME | --input FILE] [--param k=v]... --radius R
 *             [--inner r] [--m k] [--mode exact|float] [--eps e]
 *             [--format json|csv|svg] [--out PATH] [--seed n]
 *
 * Exit codes: 0 success, 1 domain error (a JSON object {"error", "detail"} on
 * the output stream), 2 argument error (usage on the error stream).
 * FLATCURVE_MODE sets the default of --mode.
 */

#pragma once

#include "flatcurve/zseq.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace flatcurve {

/// args excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Sequence names: positive-integers, all-integers, odd-4n13 (n=positive|all),
/// gaussian-lattice, integers-minus-i, orbit (seeds=..., gens=..., wordlen=N),
/// explicit (points="re,im;re,im;..."). Throws InvalidArgument.
GeneratorSpec parse_sequence(const std::string& name, const std::map<std::string, std::string>& params);

}  // namespace flatcurve
