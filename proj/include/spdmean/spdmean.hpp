#pragma once

// Weighted least-squares (Karcher) means of symmetric positive definite
// matrices: spectral matrix functions, the trace-metric geometry, classical
// and stochastic means, and a randomized property harness.

#include "spdmean/eigh.hpp"
#include "spdmean/errors.hpp"
#include "spdmean/karcher.hpp"
#include "spdmean/matrix_io.hpp"
#include "spdmean/means.hpp"
#include "spdmean/props.hpp"
#include "spdmean/random.hpp"
#include "spdmean/spaces.hpp"
#include "spdmean/spectral.hpp"
#include "spdmean/types.hpp"
#include "spdmean/weight.hpp"
