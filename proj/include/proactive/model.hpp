#pragma once

#include "proactive/error.hpp"
#include "proactive/model/action.hpp"
#include "proactive/model/atom.hpp"
#include "proactive/model/desirability.hpp"
#include "proactive/model/dynamic_system.hpp"
#include "proactive/model/formula.hpp"
#include "proactive/model/goal.hpp"
