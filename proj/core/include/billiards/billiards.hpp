#pragma once

#include "billiards/analysis/analysis.hpp"
#include "billiards/caustics/cayley.hpp"
#include "billiards/caustics/poncelet.hpp"
#include "billiards/caustics/rational.hpp"
#include "billiards/caustics/tangency.hpp"
#include "billiards/common.hpp"
#include "billiards/polyref/polygons.hpp"
#include "billiards/projcore/harmonic.hpp"
#include "billiards/projcore/projective.hpp"
#include "billiards/projcore/quadratic.hpp"
#include "billiards/projcore/quadric.hpp"
#include "billiards/reflect/boundary.hpp"
#include "billiards/reflect/frames.hpp"
#include "billiards/reflect/orbit.hpp"
#include "billiards/reflect/reflection.hpp"
