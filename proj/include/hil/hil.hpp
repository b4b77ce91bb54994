#pragma once

#include "hil/barcode.hpp"
#include "hil/common.hpp"
#include "hil/experiments.hpp"
#include "hil/filtration.hpp"
#include "hil/fp.hpp"
#include "hil/grid_module.hpp"
#include "hil/interleaving.hpp"
#include "hil/io.hpp"
#include "hil/matching.hpp"
#include "hil/metric_space.hpp"
#include "hil/persistence.hpp"
#include "hil/whitehead.hpp"
