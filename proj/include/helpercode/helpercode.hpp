#pragma once

#include "char_graph.hpp"
#include "coupling.hpp"
#include "decomposition.hpp"
#include "error.hpp"
#include "huffman.hpp"
#include "instance.hpp"
#include "matching.hpp"
#include "pmf.hpp"
#include "rates.hpp"
#include "sim.hpp"
#include "sinkhorn.hpp"
#include "sweep.hpp"
