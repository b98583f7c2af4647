#pragma once

#include "chargeom.hpp"
#include "exact/cyclotomic.hpp"
#include "exact/membership.hpp"
#include "exact/mpoly.hpp"
#include "exact/rational.hpp"
#include "exact/ratfn.hpp"
#include "exact/threeform.hpp"
#include "modforms.hpp"
#include "numeric.hpp"
#include "qseries.hpp"
#include "report.hpp"
#include "suite.hpp"
#include "symplectic.hpp"
#include "variety.hpp"
