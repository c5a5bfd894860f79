#pragma once

#include "reflectionless/params.hpp"
#include "reflectionless/analytic.hpp"
#include "reflectionless/quadrature.hpp"
#include "reflectionless/special_integrals.hpp"
#include "reflectionless/completeness.hpp"
#include "reflectionless/oracle.hpp"
