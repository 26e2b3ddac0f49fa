#pragma once

#include "spherebot/analysis.hpp"
#include "spherebot/controller.hpp"
#include "spherebot/convergence.hpp"
#include "spherebot/presets.hpp"
#include "spherebot/robot.hpp"
#include "spherebot/simulator.hpp"
#include "spherebot/so3.hpp"
#include "spherebot/sweep.hpp"
