#pragma once

#include "chipfas/acyclic.hpp"
#include "chipfas/chipfire.hpp"
#include "chipfas/config_io.hpp"
#include "chipfas/digraph.hpp"
#include "chipfas/error.hpp"
#include "chipfas/eulerianize.hpp"
#include "chipfas/generate.hpp"
#include "chipfas/recurrence.hpp"
