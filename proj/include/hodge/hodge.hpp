/** Umbrella header. */

#ifndef HODGE_HODGE_HPP
#define HODGE_HODGE_HPP

#include "error.hpp"
#include "scalar.hpp"
#include "matrix.hpp"
#include "subspace.hpp"
#include "filtration.hpp"
#include "hodge_data.hpp"
#include "monodromy.hpp"
#include "lattice.hpp"
#include "cone.hpp"
#include "admissibility.hpp"
#include "fan.hpp"
#include "toric.hpp"
#include "orbit.hpp"
#include "fixtures.hpp"

#endif
