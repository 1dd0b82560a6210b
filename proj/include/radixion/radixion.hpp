#pragma once

#include "radixion/error.hpp"
#include "radixion/integer.hpp"
#include "radixion/limits.hpp"
#include "radixion/parallel.hpp"
#include "radixion/algebra.hpp"
#include "radixion/encoding.hpp"
#include "radixion/numeration.hpp"
#include "radixion/perron.hpp"
#include "radixion/carry.hpp"
#include "radixion/tile.hpp"
#include "radixion/analysis.hpp"
