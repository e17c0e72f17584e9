#pragma once

#include "funklab/analyzer.hpp"
#include "funklab/config.hpp"
#include "funklab/dynamics.hpp"
#include "funklab/error.hpp"
#include "funklab/geometry.hpp"
#include "funklab/kernelgen.hpp"
#include "funklab/parse.hpp"
#include "funklab/quadrature.hpp"
#include "funklab/random.hpp"
#include "funklab/spherical_function.hpp"
#include "funklab/transform.hpp"
