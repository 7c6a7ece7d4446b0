#pragma once

#include "uavcover/bench.hpp"
#include "uavcover/correction.hpp"
#include "uavcover/exact.hpp"
#include "uavcover/geometry.hpp"
#include "uavcover/grid.hpp"
#include "uavcover/io.hpp"
#include "uavcover/kmeans.hpp"
#include "uavcover/pipeline.hpp"
#include "uavcover/placement.hpp"
#include "uavcover/pool_loss.hpp"
#include "uavcover/scenario.hpp"
#include "uavcover/spiral.hpp"
