#pragma once

#include "wiredrive/chain.hpp"
#include "wiredrive/command_pipeline.hpp"
#include "wiredrive/config.hpp"
#include "wiredrive/design_optimization.hpp"
#include "wiredrive/errors.hpp"
#include "wiredrive/gait.hpp"
#include "wiredrive/io.hpp"
#include "wiredrive/leg_kinematics.hpp"
#include "wiredrive/tendon.hpp"
