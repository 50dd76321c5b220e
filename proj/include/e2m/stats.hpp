#pragma once

#include "e2m/common.hpp"

namespace e2m {

// Standard normal quantile function, Wichura's PPND16 rational approximation
// (relative error below 1e-15 on (0,1)).
double norm_quantile(double p);

}  // namespace e2m
