#pragma once

#include "qtangent/cyclotomic.hpp"
#include "qtangent/linalg.hpp"
#include "qtangent/polynomial.hpp"
#include "qtangent/ratfunc.hpp"
#include "qtangent/rational.hpp"
