#pragma once

#include "bang/derivation.hpp"
#include "bang/term.hpp"

namespace bang::fixtures {

// der(!K) !I !Omega with K = \x. \y. x and I = \x. x.
Term t0();

// der((\y. \x. z) (der(y) y)): reduces to a normal form with a clash.
Term clash_example();

// Transcription of the system U derivation of t0 with tau = o0, size 8.
DerivationU phi0();

// Transcription of the tight derivation of t0 with counters (2,3,1).
DerivationE tight_t0();

}  // namespace bang::fixtures
