#pragma once

#include "shrinkdist/estimators.hpp"
#include "shrinkdist/ext_real.hpp"
#include "shrinkdist/finite_dist.hpp"
#include "shrinkdist/impossibility.hpp"
#include "shrinkdist/limits.hpp"
#include "shrinkdist/mixture.hpp"
#include "shrinkdist/montecarlo.hpp"
#include "shrinkdist/normal.hpp"
#include "shrinkdist/report.hpp"
#include "shrinkdist/rng.hpp"
#include "shrinkdist/selection.hpp"
#include "shrinkdist/scenarios.hpp"
