#pragma once

#include "gqae/completion.hpp"
#include "gqae/errors.hpp"
#include "gqae/io.hpp"
#include "gqae/lowerbound.hpp"
#include "gqae/polynomials.hpp"
#include "gqae/quadrature.hpp"
#include "gqae/roots.hpp"
#include "gqae/simulator.hpp"
#include "gqae/sineqpe.hpp"
#include "gqae/synthesis.hpp"
