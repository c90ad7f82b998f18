#pragma once
// Umbrella header.

#include "ntl/aut.hpp"
#include "ntl/energy.hpp"
#include "ntl/errors.hpp"
#include "ntl/json_io.hpp"
#include "ntl/mobius.hpp"
#include "ntl/moduli.hpp"
#include "ntl/morphism.hpp"
#include "ntl/order.hpp"
#include "ntl/parallel.hpp"
#include "ntl/tolerances.hpp"
#include "ntl/tree.hpp"
#include "ntl/verify.hpp"
