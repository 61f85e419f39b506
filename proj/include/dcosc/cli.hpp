#pragma once

// Command-line front end: analyze / phi / fourier / equiv / qary / minmax /
// gray / binom / validate / plot-data. JSON reports on stdout, diagnostics
// on stderr; exit 0 on success, 1 on validation failure, 2 on usage errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace dcosc {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcosc
