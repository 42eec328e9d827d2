#ifndef LOCCOH_LOCCOH_HPP
#define LOCCOH_LOCCOH_HPP

#include "loccoh/algebra.hpp"
#include "loccoh/cech.hpp"
#include "loccoh/checks.hpp"
#include "loccoh/document.hpp"
#include "loccoh/duality.hpp"
#include "loccoh/element.hpp"
#include "loccoh/expr.hpp"
#include "loccoh/independence.hpp"
#include "loccoh/linear_algebra.hpp"
#include "loccoh/sampling.hpp"
#include "loccoh/scalar.hpp"
#include "loccoh/shape.hpp"

#endif
