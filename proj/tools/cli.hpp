#pragma once

#include <iosfwd>

namespace magnomech {

/// Entry point of the `magnomech` executable. Returns 0 on success, 1 on a
/// usage or configuration error and 2 on a numeric or stability failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace magnomech
