#pragma once

#include <iosfwd>

namespace qdcr::cli {

/// Exit codes: 0 ok, 1 internal or I/O error, 2 invalid or inadmissible input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdcr::cli
