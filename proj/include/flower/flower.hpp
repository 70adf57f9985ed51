#pragma once

// Umbrella header.

#include "flower/construction.hpp"
#include "flower/dress.hpp"
#include "flower/errors.hpp"
#include "flower/fr_code.hpp"
#include "flower/gf256.hpp"
#include "flower/io.hpp"
#include "flower/mds.hpp"
#include "flower/repair.hpp"
#include "flower/sequences.hpp"
