#ifndef INFECT_INFECT_HPP
#define INFECT_INFECT_HPP

#include "edge_list.hpp"
#include "error.hpp"
#include "estimator.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "power_iteration.hpp"
#include "result.hpp"
#include "vector_ops.hpp"

#endif
