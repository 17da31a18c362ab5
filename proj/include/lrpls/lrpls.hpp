#pragma once

#include "bits.hpp"
#include "rational.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "locality.hpp"
#include "scheme.hpp"
#include "slocal.hpp"
#include "comparison.hpp"
#include "problem.hpp"
#include "solvers.hpp"
#include "forests.hpp"
#include "families.hpp"
#include "partition.hpp"
#include "base_schemes.hpp"
#include "compiler_optdgp.hpp"
#include "compiler_cgf.hpp"
#include "oracles.hpp"
#include "generators.hpp"
#include "registry.hpp"
