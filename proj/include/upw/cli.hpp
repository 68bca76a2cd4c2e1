#pragma once

// Command-line front end: every subcommand prints one JSON document on
// standard output. Exit code 0 means verdict true/pass, 1 means verdict
// false/fail, 2 means usage or domain error.

#include <iosfwd>

namespace upw {

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace upw
