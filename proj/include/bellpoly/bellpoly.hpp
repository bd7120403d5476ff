// Umbrella header.

#pragma once

#include "bellpoly/behavior.hpp"
#include "bellpoly/cache.hpp"
#include "bellpoly/canonical.hpp"
#include "bellpoly/dd.hpp"
#include "bellpoly/experiments.hpp"
#include "bellpoly/families.hpp"
#include "bellpoly/fm.hpp"
#include "bellpoly/inequality.hpp"
#include "bellpoly/joint.hpp"
#include "bellpoly/lift.hpp"
#include "bellpoly/linear_system.hpp"
#include "bellpoly/matrix.hpp"
#include "bellpoly/membership.hpp"
#include "bellpoly/rational.hpp"
#include "bellpoly/relabeling.hpp"
#include "bellpoly/scenario.hpp"
#include "bellpoly/simplex.hpp"
