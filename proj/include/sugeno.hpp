#pragma once

#include "sugeno/binops.hpp"
#include "sugeno/bounds.hpp"
#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"
#include "sugeno/integrals.hpp"
#include "sugeno/interval_set.hpp"
#include "sugeno/io/json.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/piecewise.hpp"
#include "sugeno/profile.hpp"
#include "sugeno/repro.hpp"
#include "sugeno/symmetric.hpp"
#include "sugeno/verify/fuzz.hpp"
#include "sugeno/verify/oracle.hpp"
#include "sugeno/verify/predicates.hpp"
#include "sugeno/verify/random.hpp"
#include "sugeno/verify/witness.hpp"
