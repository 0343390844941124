#pragma once

#include "dim/graph.hpp"
#include "dim/patterns.hpp"
#include "dim/coloring.hpp"
#include "dim/treewidth_dp.hpp"
#include "dim/subsolver.hpp"
#include "dim/levels.hpp"
#include "dim/solver.hpp"
#include "dim/oracle.hpp"
#include "dim/io.hpp"
