#pragma once

#include <iosfwd>

namespace ef {

// Golden known-answer checks over embedded toy parameters: the mixing-box
// trace, two full generator vectors, the exponentiation-generator vectors,
// and the square-root-chain identities. Needs no external files. Returns 0
// when every value matches, 1 otherwise; one line per check when `log` is
// given.
int run_selftest(std::ostream* log);

} // namespace ef
