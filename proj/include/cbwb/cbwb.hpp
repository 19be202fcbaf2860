#pragma once

// Umbrella header.

#include "arith.hpp"
#include "brst.hpp"
#include "characters.hpp"
#include "charseries.hpp"
#include "genus.hpp"
#include "linalg.hpp"
#include "root_data.hpp"
#include "weyl.hpp"
