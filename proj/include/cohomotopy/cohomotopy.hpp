#pragma once

#include "cohomotopy/abelian.hpp"
#include "cohomotopy/cohomology.hpp"
#include "cohomotopy/errors.hpp"
#include "cohomotopy/model.hpp"
#include "cohomotopy/simplicial.hpp"
#include "cohomotopy/spheres.hpp"
#include "cohomotopy/steenrod.hpp"
#include "cohomotopy/torsor.hpp"
