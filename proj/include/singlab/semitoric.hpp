#pragma once

#include "singlab/semitoric/semigroup.hpp"
#include "singlab/semitoric/series.hpp"
#include "singlab/semitoric/toric.hpp"
