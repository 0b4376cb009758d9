#pragma once

#include "rational.hpp"
#include "interval.hpp"
#include "area.hpp"
#include "json.hpp"
#include "pv.hpp"
#include "analysis.hpp"
#include "oracle.hpp"
#include "laws.hpp"
#include "svg.hpp"
