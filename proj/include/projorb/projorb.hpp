#pragma once

// Umbrella header: real projective structures on the order-3 commutator
// orbifold — holonomy matrices, trace coordinates, the moduli variety and its
// chart, developing-map geometry, and cusp analysis, over a float or exact
// rational scalar backend.

#include "projorb/scalar.hpp"
#include "projorb/mat4.hpp"
#include "projorb/linalg.hpp"
#include "projorb/roots.hpp"
#include "projorb/projective.hpp"
#include "projorb/forms.hpp"
#include "projorb/holonomy.hpp"
#include "projorb/moduli.hpp"
#include "projorb/geometry.hpp"
#include "projorb/ends.hpp"
