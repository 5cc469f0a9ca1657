#pragma once

// Everything: exact cones, lattice configurations, convexity cones, moment
// and pseudo-moment tropicalizations, and the JSON front end.

#include "tropmom/commands.hpp"
#include "tropmom/errors.hpp"
#include "tropmom/exact_linalg.hpp"
#include "tropmom/funcones.hpp"
#include "tropmom/lattice.hpp"
#include "tropmom/lp.hpp"
#include "tropmom/moments.hpp"
#include "tropmom/polyhedra.hpp"
#include "tropmom/problem_io.hpp"
#include "tropmom/projection.hpp"
#include "tropmom/pseudo_trop.hpp"
