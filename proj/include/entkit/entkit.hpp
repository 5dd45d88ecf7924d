#pragma once

// Umbrella header pulling in the whole public API.

#include "entkit/errors.hpp"
#include "entkit/linalg.hpp"
#include "entkit/measurements.hpp"
#include "entkit/mixed_measures.hpp"
#include "entkit/protocols.hpp"
#include "entkit/pure_measures.hpp"
#include "entkit/state_io.hpp"
#include "entkit/states.hpp"
