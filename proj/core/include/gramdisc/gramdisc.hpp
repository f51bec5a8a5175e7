#pragma once

#include "gramdisc/classification.hpp"
#include "gramdisc/constants.hpp"
#include "gramdisc/curves.hpp"
#include "gramdisc/discriminant.hpp"
#include "gramdisc/errors.hpp"
#include "gramdisc/gram_core.hpp"
#include "gramdisc/parallel.hpp"
#include "gramdisc/section_engine.hpp"
#include "gramdisc/special_functions.hpp"
#include "gramdisc/summation.hpp"
