#pragma once

#include "so4/basis.hpp"
#include "so4/diamagnetic.hpp"
#include "so4/errors.hpp"
#include "so4/half_int.hpp"
#include "so4/matrix.hpp"
#include "so4/operators.hpp"
#include "so4/pf_rational.hpp"
#include "so4/radical_sum.hpp"
#include "so4/rational.hpp"
#include "so4/stark.hpp"
#include "so4/sumrules.hpp"
#include "so4/wigner.hpp"
