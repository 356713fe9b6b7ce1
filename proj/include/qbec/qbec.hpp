#pragma once

/// Convenience umbrella: pulls in the whole toolkit for converting between
/// quantum channels and bipartite states, testing entanglement properties,
/// and building entanglement-binding channels from PPT entangled states.

#include "qbec/channels.hpp"
#include "qbec/complex_matrix.hpp"
#include "qbec/construct.hpp"
#include "qbec/errors.hpp"
#include "qbec/families.hpp"
#include "qbec/io.hpp"
#include "qbec/linalg.hpp"
#include "qbec/selfcheck.hpp"
#include "qbec/states.hpp"
