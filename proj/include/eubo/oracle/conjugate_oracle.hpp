#pragma once

#include "eubo/bounds.hpp"
#include "eubo/models/conjugate_gaussian.hpp"
#include "eubo/oracle/divergences.hpp"
#include "eubo/oracle/quadrature.hpp"
#include "eubo/variational.hpp"

namespace eubo {

// Exact (quadrature) bound values on the 1-D conjugate testbed, the ground
// truth the Monte Carlo estimators are checked against. q must be 1-D.
//
//   ELBO  = E_q[log p(D,theta) - log q]       = log Z - KL(q || posterior)
//   EUBO  = E_post[log p(D,theta) - log q]    = log Z + KL(posterior || q)
//   RENYI = 1/(1-a) log E_q[omega^(1-a)]      = log Z + D_a(q || posterior)
//   CHI   = (1/n)  log E_q[omega^n]           = log Z + D_chi^n(q || posterior)
double quad_bound(const BoundObjective& objective, const ConjugateGaussianModel& model,
                  const VariationalParams& q, const QuadratureGrid& grid);

// Shorthands for the two classic bounds.
double quad_eubo(const ConjugateGaussianModel& model, const VariationalParams& q,
                 const QuadratureGrid& grid);
double quad_elbo(const ConjugateGaussianModel& model, const VariationalParams& q,
                 const QuadratureGrid& grid);

// The analytic posterior as oracle objects.
Gaussian1D posterior_gaussian(const ConjugateGaussianModel& model);
Gaussian1D variational_gaussian(const VariationalParams& q);

// A grid wide enough for this model/q pair.
QuadratureGrid default_grid(const ConjugateGaussianModel& model, const VariationalParams& q);

} // namespace eubo
