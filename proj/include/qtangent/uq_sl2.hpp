#pragma once

#include "qtangent/uq/aword.hpp"
#include "qtangent/uq/pbw.hpp"
#include "qtangent/uq/su2.hpp"
