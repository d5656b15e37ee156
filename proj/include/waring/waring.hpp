#pragma once

#include "waring/acceptance.hpp"
#include "waring/arcs.hpp"
#include "waring/counting.hpp"
#include "waring/exp_sums.hpp"
#include "waring/numeric.hpp"
#include "waring/oscillatory.hpp"
#include "waring/singular_series.hpp"
#include "waring/types.hpp"
#include "waring/verify.hpp"
#include "waring/weyl_sums.hpp"
