#pragma once

#include "cubical/actions.hpp"
#include "cubical/barycentre.hpp"
#include "cubical/bitvector.hpp"
#include "cubical/complex.hpp"
#include "cubical/constructions.hpp"
#include "cubical/cross_ratio.hpp"
#include "cubical/duality.hpp"
#include "cubical/error.hpp"
#include "cubical/geodesics.hpp"
#include "cubical/halfspace.hpp"
#include "cubical/median.hpp"
#include "cubical/pocset.hpp"
#include "cubical/tree.hpp"
#include "cubical/weights.hpp"
