#ifndef LRBSCHED_LRBSCHED_HPP
#define LRBSCHED_LRBSCHED_HPP

#include "lrbsched/channel_simulator.hpp"
#include "lrbsched/detection_model.hpp"
#include "lrbsched/errors.hpp"
#include "lrbsched/exponent_analysis.hpp"
#include "lrbsched/gaussian_numerics.hpp"
#include "lrbsched/np_tester.hpp"
#include "lrbsched/rng.hpp"
#include "lrbsched/threshold_solver.hpp"

#endif  // LRBSCHED_LRBSCHED_HPP
