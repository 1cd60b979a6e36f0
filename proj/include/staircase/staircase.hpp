#pragma once

#include "staircase/errors.hpp"
#include "staircase/numeric.hpp"
#include "staircase/bits.hpp"
#include "staircase/growth.hpp"
#include "staircase/sequences.hpp"
#include "staircase/words.hpp"
#include "staircase/table.hpp"
#include "staircase/parallel.hpp"
#include "staircase/language.hpp"
#include "staircase/complexity.hpp"
#include "staircase/measure.hpp"
#include "staircase/cli.hpp"
