#pragma once

#include "zamint/closed_forms.hpp"
#include "zamint/complex_io.hpp"
#include "zamint/functionals.hpp"
#include "zamint/gauss_moments.hpp"
#include "zamint/group_action.hpp"
#include "zamint/log_gamma.hpp"
#include "zamint/monte_carlo.hpp"
#include "zamint/params.hpp"
#include "zamint/qmc.hpp"
#include "zamint/quadrature.hpp"
#include "zamint/report.hpp"
#include "zamint/rng.hpp"
#include "zamint/sphere_reduction.hpp"
#include "zamint/stereographic.hpp"
#include "zamint/triple_integral.hpp"
