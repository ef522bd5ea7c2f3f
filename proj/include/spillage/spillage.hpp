#pragma once

// Umbrella header for the production surface. The arbitrary-precision
// verification oracle (exact_oracle.hpp) is intentionally excluded: it is
// test-support code and needs gmp/gmpxx at link time.

#include "spillage/accuracy.hpp"
#include "spillage/approximation.hpp"
#include "spillage/distribution.hpp"
#include "spillage/generating.hpp"
#include "spillage/logspace.hpp"
#include "spillage/moments.hpp"
#include "spillage/occupancy.hpp"
#include "spillage/rng.hpp"
#include "spillage/simulation.hpp"
#include "spillage/stirling.hpp"
