#pragma once

#include "gonodyn/csv.hpp"
#include "gonodyn/curve_tracing.hpp"
#include "gonodyn/errors.hpp"
#include "gonodyn/fixed_points.hpp"
#include "gonodyn/gonosomal_operator.hpp"
#include "gonodyn/invariant_curves.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/power_series.hpp"
#include "gonodyn/reduced.hpp"
#include "gonodyn/scalar.hpp"
#include "gonodyn/simplex.hpp"
#include "gonodyn/svg.hpp"
#include "gonodyn/tensor.hpp"
#include "gonodyn/trajectory.hpp"
