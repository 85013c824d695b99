#ifndef PPM_PPM_HPP
#define PPM_PPM_HPP

#include "ppm/combination.hpp"
#include "ppm/count.hpp"
#include "ppm/dp.hpp"
#include "ppm/error.hpp"
#include "ppm/oracle.hpp"
#include "ppm/permutation.hpp"
#include "ppm/random.hpp"
#include "ppm/segments.hpp"
#include "ppm/solver.hpp"

#endif
