#pragma once

#include "mpalkit/analysis.hpp"
#include "mpalkit/cf.hpp"
#include "mpalkit/errors.hpp"
#include "mpalkit/generators.hpp"
#include "mpalkit/mpal.hpp"
#include "mpalkit/numeric.hpp"
#include "mpalkit/quadratic.hpp"
#include "mpalkit/word.hpp"
