#pragma once

#include "beatty/chains.hpp"
#include "beatty/csv.hpp"
#include "beatty/errors.hpp"
#include "beatty/integer_set.hpp"
#include "beatty/largeness.hpp"
#include "beatty/preservation.hpp"
#include "beatty/rational.hpp"
#include "beatty/real.hpp"
#include "beatty/spectrum.hpp"
