#pragma once

#include "dp_few.hpp"
#include "ef_identical.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "fairness.hpp"
#include "instances.hpp"
#include "io.hpp"
#include "knapsack.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "reduction.hpp"
#include "round_robin.hpp"
