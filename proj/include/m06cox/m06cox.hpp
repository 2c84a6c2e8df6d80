// Umbrella header.
#pragma once

#include "m06cox/lattice.hpp"
#include "m06cox/lifting.hpp"
#include "m06cox/oracle.hpp"
#include "m06cox/restriction.hpp"
#include "m06cox/x_cone.hpp"
