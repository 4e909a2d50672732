#pragma once

#include "hypercoarsen/coarsen.hpp"
#include "hypercoarsen/embedding.hpp"
#include "hypercoarsen/expansion.hpp"
#include "hypercoarsen/hgr_io.hpp"
#include "hypercoarsen/hierarchy.hpp"
#include "hypercoarsen/hypergraph.hpp"
#include "hypercoarsen/localcluster.hpp"
#include "hypercoarsen/metrics.hpp"
#include "hypercoarsen/resistance.hpp"
