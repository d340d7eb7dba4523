#pragma once

// Umbrella header.

#include "cutoff.hpp"
#include "exterior.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "laurent.hpp"
#include "poly.hpp"
#include "pv.hpp"
#include "quad.hpp"
#include "report.hpp"
#include "scenarios.hpp"
#include "solver.hpp"
#include "types.hpp"
