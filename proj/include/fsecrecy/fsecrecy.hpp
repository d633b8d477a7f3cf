#pragma once

// Umbrella header: the full fsecrecy library.
//
// Layering (each header can also be included on its own):
//   errors      -- exception taxonomy
//   specfun/*   -- log-gamma/beta, Gauss 2F1, univariate Meijer G, and the
//                  extended generalized bivariate Meijer G (EGBMGF)
//   quadrature  -- adaptive Gauss-Kronrod integration
//   rng         -- xoshiro256++ with jumpable streams, gamma variates
//   fading      -- Fisher-Snedecor F channel model
//   secrecy     -- ASC / SOP / SOP^L / SPSC, closed-form and quadrature
//   montecarlo  -- seeded, batch-parallel Monte Carlo estimators
//   sweep, svg  -- lambda-grid sweep harness, CSV/SVG emission

#include "errors.hpp"
#include "fading.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "secrecy.hpp"
#include "specfun/egbmgf.hpp"
#include "specfun/gamma.hpp"
#include "specfun/hyp2f1.hpp"
#include "specfun/meijer_g.hpp"
#include "svg.hpp"
#include "sweep.hpp"
