#pragma once

#include "tristream/analysis.hpp"
#include "tristream/csv.hpp"
#include "tristream/error.hpp"
#include "tristream/estimators.hpp"
#include "tristream/generators.hpp"
#include "tristream/graph.hpp"
#include "tristream/harness.hpp"
#include "tristream/io.hpp"
#include "tristream/oracle.hpp"
#include "tristream/random.hpp"
#include "tristream/subgraph.hpp"
#include "tristream/wedge_pool.hpp"
