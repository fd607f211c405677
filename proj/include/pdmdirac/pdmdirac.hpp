#pragma once

#include "pdmdirac/errors.hpp"
#include "pdmdirac/finite_difference.hpp"
#include "pdmdirac/format.hpp"
#include "pdmdirac/grid.hpp"
#include "pdmdirac/model.hpp"
#include "pdmdirac/morse.hpp"
#include "pdmdirac/numerics.hpp"
#include "pdmdirac/polys.hpp"
#include "pdmdirac/transform.hpp"
#include "pdmdirac/verify.hpp"
