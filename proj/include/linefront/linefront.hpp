#pragma once

#include "linefront/bessel.hpp"
#include "linefront/csv.hpp"
#include "linefront/errors.hpp"
#include "linefront/front.hpp"
#include "linefront/model.hpp"
#include "linefront/quadrature.hpp"
#include "linefront/roots.hpp"
#include "linefront/simulator.hpp"
#include "linefront/svg.hpp"
#include "linefront/version.hpp"
