#pragma once

#include "merlin/ast.hpp"
#include "merlin/deduce.hpp"
#include "merlin/dist.hpp"
#include "merlin/enumerator.hpp"
#include "merlin/frontend.hpp"
#include "merlin/levenshtein.hpp"
#include "merlin/metric_catalog.hpp"
#include "merlin/metrics_bv.hpp"
#include "merlin/metrics_string.hpp"
#include "merlin/orimetric.hpp"
#include "merlin/portfolio.hpp"
#include "merlin/search_theory.hpp"
#include "merlin/semantics.hpp"
#include "merlin/sexpr.hpp"
#include "merlin/solver.hpp"
#include "merlin/stats_json.hpp"
#include "merlin/task.hpp"
#include "merlin/value.hpp"
