#pragma once

// Invariant statistical geometry on the SPD cone: metrics, invariant cubic
// tensors, statistical connections, curvature, isometries, the dually-flat
// classification and its moduli, and divergences.

#include "statgeo/classification.hpp"
#include "statgeo/connection.hpp"
#include "statgeo/cubic.hpp"
#include "statgeo/divergence.hpp"
#include "statgeo/io.hpp"
#include "statgeo/isometry.hpp"
#include "statgeo/metric.hpp"
#include "statgeo/rational.hpp"
#include "statgeo/spd.hpp"
#include "statgeo/verify.hpp"
