#pragma once

#include "check_report.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "ortho_poly.hpp"
#include "params.hpp"
#include "properties.hpp"
#include "series.hpp"
#include "special.hpp"
#include "zeros.hpp"
