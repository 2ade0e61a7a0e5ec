#pragma once

// Umbrella header for the radial first-order LP/SDP solver toolkit.

#include "radial/boundary.hpp"
#include "radial/driver.hpp"
#include "radial/errors.hpp"
#include "radial/generators.hpp"
#include "radial/io.hpp"
#include "radial/kernels.hpp"
#include "radial/problem.hpp"
#include "radial/smoothing.hpp"
#include "radial/solvers.hpp"
#include "radial/subspace.hpp"
#include "radial/symmetric.hpp"
#include "radial/validate.hpp"
