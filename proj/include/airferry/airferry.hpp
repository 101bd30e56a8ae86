#pragma once
// Umbrella header for the airferry mission-planning library.

#include "airferry/collect_select.hpp"
#include "airferry/errors.hpp"
#include "airferry/geometry.hpp"
#include "airferry/kinematics.hpp"
#include "airferry/oracle.hpp"
#include "airferry/partition.hpp"
#include "airferry/planner.hpp"
#include "airferry/robustness.hpp"
#include "airferry/scenario_io.hpp"
#include "airferry/sequencing.hpp"
#include "airferry/simulator.hpp"
#include "airferry/tours.hpp"
