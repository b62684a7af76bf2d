#pragma once

#include "admixtope/constructions.hpp"
#include "admixtope/metrics.hpp"
#include "admixtope/polytope.hpp"
#include "admixtope/shape.hpp"
#include "admixtope/volume.hpp"
