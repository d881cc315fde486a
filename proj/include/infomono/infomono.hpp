#pragma once

#include "infomono/error.hpp"
#include "infomono/markov_core.hpp"
#include "infomono/convex_q.hpp"
#include "infomono/info_measures.hpp"
#include "infomono/monotonicity_lab.hpp"
#include "infomono/zz_bounds.hpp"
