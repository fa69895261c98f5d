#pragma once

// Oracle cross-check suite behind the `selftest` CLI subcommand: every
// closed-form quantity is replayed against the brute-force numerical kernel
// with fixed seeds. Returns the number of failed checks.

#include <iosfwd>

namespace spinpair {

int run_selftest(std::ostream& out);

}  // namespace spinpair
