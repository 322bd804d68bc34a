// Command-line front end.  Subcommands: double (multicurve of the doubled
// tangle, with an automatic oracle cross-check for cfd-tier inputs),
// segments (the companion's segment decomposition), verify (compare the two
// doubling routes explicitly), pair (pairing dimension of two curve
// descriptors), cable (cable dimension plus bounds), kh-bound (Khovanov-side
// lower bound) and selftest (built-in fixtures and examples).

#pragma once

#include <iosfwd>

namespace dtangle {

// Runs the CLI; argv[0] is the program name.  Returns the process exit
// status: 0 success, 1 domain error, 2 usage error, 3 verification failure.
// A one-line reason goes to err for nonzero statuses.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dtangle
