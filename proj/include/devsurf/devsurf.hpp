#pragma once

#include "geom.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "numeric.hpp"
#include "bezier.hpp"
#include "developable.hpp"
#include "verify.hpp"
#include "patch_ops.hpp"
#include "families.hpp"
#include "io.hpp"
