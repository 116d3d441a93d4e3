#pragma once

// Umbrella header for the whole library.

#include "plectic/chart.hpp"
#include "plectic/expr.hpp"
#include "plectic/forms.hpp"
#include "plectic/lie2.hpp"
#include "plectic/normal_form.hpp"
#include "plectic/plectic_structure.hpp"
#include "plectic/report.hpp"
#include "plectic/specfile.hpp"
#include "plectic/string_sim.hpp"
#include "plectic/workbench.hpp"
