#pragma once

#include "finquo/bigint.hpp"
#include "finquo/canon.hpp"
#include "finquo/coarse/cover.hpp"
#include "finquo/coarse/equivalence.hpp"
#include "finquo/coarse/metric.hpp"
#include "finquo/coarse/propagation.hpp"
#include "finquo/conjugacy.hpp"
#include "finquo/digraph.hpp"
#include "finquo/fmcheck/eval.hpp"
#include "finquo/fmcheck/formula.hpp"
#include "finquo/fmcheck/hintikka.hpp"
#include "finquo/fmcheck/limits.hpp"
#include "finquo/fmcheck/obstruction.hpp"
#include "finquo/fmcheck/structure.hpp"
#include "finquo/io/json.hpp"
#include "finquo/scenarios.hpp"
#include "finquo/sequence.hpp"
#include "finquo/spectrum.hpp"
#include "finquo/tri.hpp"
#include "finquo/window_map.hpp"
