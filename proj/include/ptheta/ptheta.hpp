#pragma once

#include "ptheta/approx.hpp"
#include "ptheta/complex_zeros.hpp"
#include "ptheta/config.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/eval.hpp"
#include "ptheta/fold.hpp"
#include "ptheta/identities.hpp"
#include "ptheta/io.hpp"
#include "ptheta/plot.hpp"
#include "ptheta/real_zeros.hpp"
#include "ptheta/spectrum.hpp"
#include "ptheta/verify.hpp"
