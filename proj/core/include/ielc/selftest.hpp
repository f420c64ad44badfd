#pragma once

#include <cstdint>
#include <iosfwd>

namespace ielc {

/// Runs the randomized property suites (round-trips, substitution laws,
/// subject reduction, simulation, translations, semantics). Output is
/// byte-deterministic for a fixed seed and count. Returns the number of
/// failed suites.
int run_selftest(uint64_t seed, int count, std::ostream& out);

}  // namespace ielc
