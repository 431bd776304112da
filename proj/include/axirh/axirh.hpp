#pragma once

// Umbrella header.

#include "axirh/errors.hpp"
#include "axirh/numerics.hpp"
#include "axirh/parallel.hpp"
#include "axirh/axial_core.hpp"
#include "axirh/plane_domain.hpp"
#include "axirh/disk_rh.hpp"
#include "axirh/pompeiu.hpp"
#include "axirh/vekua.hpp"
#include "axirh/solver_api.hpp"
#include "axirh/fd_oracle.hpp"
#include "axirh/config.hpp"
#include "axirh/field_io.hpp"
#include "axirh/cli.hpp"
