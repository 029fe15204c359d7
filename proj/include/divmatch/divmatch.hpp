#pragma once

#include "graph.hpp"
#include "io.hpp"
#include "pool.hpp"
#include "solvers.hpp"
#include "sampling.hpp"
#include "diversity.hpp"
#include "predictability.hpp"
