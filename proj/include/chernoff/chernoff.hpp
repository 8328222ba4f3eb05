#pragma once

#include "chernoff/analysis.hpp"
#include "chernoff/erfc.hpp"
#include "chernoff/error.hpp"
#include "chernoff/grid.hpp"
#include "chernoff/heat.hpp"
#include "chernoff/initial_condition.hpp"
#include "chernoff/shift_measure.hpp"
#include "chernoff/transport.hpp"
