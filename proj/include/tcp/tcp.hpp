#pragma once

#include "tcp/annealing.hpp"
#include "tcp/approx.hpp"
#include "tcp/arrangement.hpp"
#include "tcp/bench.hpp"
#include "tcp/branch_and_bound.hpp"
#include "tcp/brute_force.hpp"
#include "tcp/dp1d.hpp"
#include "tcp/error.hpp"
#include "tcp/evolutionary.hpp"
#include "tcp/generators.hpp"
#include "tcp/greedy.hpp"
#include "tcp/instance.hpp"
#include "tcp/io.hpp"
#include "tcp/ip_model.hpp"
#include "tcp/local_search.hpp"
#include "tcp/portal_state.hpp"
#include "tcp/random.hpp"
#include "tcp/rational.hpp"
#include "tcp/solve.hpp"
