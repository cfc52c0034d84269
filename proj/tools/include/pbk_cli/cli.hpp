#pragma once

#include <iosfwd>

namespace pbk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

/**
 * Entry point behind `pbk diagnose|kernel|price`. Results go to `out` (or the
 * --out file), messages to `err`.
 *
 * Exit codes: 0 success, 1 a diagnostic check failed or a runtime error
 * occurred, 2 invalid parameters or unparsable flags.
 */
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbk::cli
