#pragma once

#include "pigd/diagnostics.hpp"
#include "pigd/library.hpp"
#include "pigd/linalg.hpp"
#include "pigd/ode.hpp"
#include "pigd/problem.hpp"
#include "pigd/prox.hpp"
#include "pigd/reference.hpp"
#include "pigd/rng.hpp"
#include "pigd/schedules.hpp"
#include "pigd/solvers.hpp"
#include "pigd/types.hpp"
