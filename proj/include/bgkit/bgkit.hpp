#pragma once
// Umbrella header.

#include "bgkit/errors.hpp"
#include "bgkit/fock.hpp"
#include "bgkit/measures.hpp"
#include "bgkit/moments.hpp"
#include "bgkit/quadrature.hpp"
#include "bgkit/report.hpp"
#include "bgkit/scalar.hpp"
#include "bgkit/specfun.hpp"
#include "bgkit/su11.hpp"
#include "bgkit/un1.hpp"
