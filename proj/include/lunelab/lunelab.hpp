#pragma once

#include "lunelab/arrangement.hpp"
#include "lunelab/bounds.hpp"
#include "lunelab/curve.hpp"
#include "lunelab/geom.hpp"
#include "lunelab/intersect.hpp"
#include "lunelab/json_io.hpp"
#include "lunelab/lune.hpp"
#include "lunelab/parallel.hpp"
#include "lunelab/profile.hpp"
#include "lunelab/rational.hpp"
#include "lunelab/scenario.hpp"
#include "lunelab/shear.hpp"
#include "lunelab/svg.hpp"
