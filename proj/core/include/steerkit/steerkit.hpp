#pragma once

#include "steerkit/assemblage.hpp"
#include "steerkit/criteria.hpp"
#include "steerkit/errors.hpp"
#include "steerkit/lhs_oracle.hpp"
#include "steerkit/matrix.hpp"
#include "steerkit/network.hpp"
#include "steerkit/polytope.hpp"
#include "steerkit/qstate.hpp"
#include "steerkit/scenarios.hpp"
#include "steerkit/version.hpp"
