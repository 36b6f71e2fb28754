#pragma once

#include "pension_mc/accumulation.hpp"
#include "pension_mc/engine.hpp"
#include "pension_mc/error.hpp"
#include "pension_mc/report.hpp"
#include "pension_mc/retirement.hpp"
#include "pension_mc/scenario.hpp"
#include "pension_mc/stats.hpp"
#include "pension_mc/stochastic.hpp"
