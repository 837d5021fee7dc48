#ifndef SSMD_SSMD_HPP
#define SSMD_SSMD_HPP

#include "ssmd/averaging.hpp"
#include "ssmd/common.hpp"
#include "ssmd/envelope.hpp"
#include "ssmd/feasible_set.hpp"
#include "ssmd/mirror_map.hpp"
#include "ssmd/normal.hpp"
#include "ssmd/prox.hpp"
#include "ssmd/random.hpp"
#include "ssmd/solver.hpp"
#include "ssmd/stepsize.hpp"
#include "ssmd/utility_model.hpp"

#endif  // SSMD_SSMD_HPP
