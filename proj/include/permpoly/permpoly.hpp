#pragma once

#include "permpoly/census.hpp"
#include "permpoly/error.hpp"
#include "permpoly/hierarchy.hpp"
#include "permpoly/modmath.hpp"
#include "permpoly/nullpoly.hpp"
#include "permpoly/permtest.hpp"
#include "permpoly/poly.hpp"
#include "permpoly/recover.hpp"
