#pragma once

#include "nlkg/errors.hpp"
#include "nlkg/evolution.hpp"
#include "nlkg/experiment.hpp"
#include "nlkg/field.hpp"
#include "nlkg/functionals.hpp"
#include "nlkg/grid.hpp"
#include "nlkg/groundstate.hpp"
#include "nlkg/io.hpp"
#include "nlkg/operators.hpp"
#include "nlkg/params.hpp"
#include "nlkg/scaling.hpp"
#include "nlkg/trajectory.hpp"
#include "nlkg/variational.hpp"
#include "nlkg/virial.hpp"
