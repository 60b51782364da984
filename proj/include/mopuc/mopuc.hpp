// Umbrella header: matrix orthogonal polynomials on the unit circle,
// random-unitary spectral measures, rate functions, and the Monte Carlo
// verification experiments.

#pragma once

#include "mopuc/experiments.hpp"
#include "mopuc/linalg.hpp"
#include "mopuc/measures.hpp"
#include "mopuc/rates.hpp"
#include "mopuc/rng.hpp"
#include "mopuc/sampling.hpp"
#include "mopuc/serialization.hpp"
#include "mopuc/stats.hpp"
#include "mopuc/verblunsky.hpp"
