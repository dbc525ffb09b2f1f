// aqs.hpp — Umbrella header for the analog quantum search library.

#pragma once

#include "aqs/angles.hpp"
#include "aqs/convert.hpp"
#include "aqs/evolution.hpp"
#include "aqs/fullspace.hpp"
#include "aqs/geometry.hpp"
#include "aqs/hamiltonian.hpp"
#include "aqs/params.hpp"
#include "aqs/timing.hpp"
