#pragma once

// Sum-rank-metric codes over finite field towers: construction, analysis,
// and verification through the code/system correspondence.

#include "sumrank/analysis.hpp"
#include "sumrank/code.hpp"
#include "sumrank/constructions.hpp"
#include "sumrank/errors.hpp"
#include "sumrank/gdual.hpp"
#include "sumrank/gf.hpp"
#include "sumrank/io.hpp"
#include "sumrank/linalg.hpp"
#include "sumrank/space.hpp"
#include "sumrank/system.hpp"
