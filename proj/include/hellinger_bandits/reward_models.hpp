#pragma once

#include <string>
#include <string_view>

#include "hellinger_bandits/rng.hpp"

namespace hb {

// One-parameter exponential family of the arm rewards.
enum class Family { Bernoulli, Poisson };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

// Bernoulli means live in [0, 1]; Poisson means in [0, inf).
bool in_domain(Family family, double mu);
void check_mean(Family family, double mu);

// Squared Hellinger distance between two family members given by their means.
// Bernoulli: 1 - sqrt((1-p)(1-q)) - sqrt(pq), evaluated as
// ((sqrt p - sqrt q)^2 + (sqrt(1-p) - sqrt(1-q))^2) / 2 to avoid cancellation.
// Poisson: 1 - exp(-(sqrt l0 - sqrt l1)^2 / 2).
double hellinger_sq(Family family, double mu0, double mu1);

// -log(1 - H^2), evaluated directly so it stays finite after H^2 rounds to 1.
double bhattacharyya_distance(Family family, double mu0, double mu1);

// The same distance computed through the cumulant function:
// 1 - exp(psi((a+b)/2) - (psi(a)+psi(b))/2) with a, b the natural parameters.
// Defined on the interior of the natural parameter space only (Bernoulli
// means strictly inside (0, 1)); Poisson accepts a zero mean.
double hellinger_sq_cumulant(Family family, double mu0, double mu1);

// Cumulant function psi and the mean -> natural parameter map.
double cumulant(Family family, double theta);
double natural_param(Family family, double mu);

// KL(P_mu0 || P_mu1), +inf when P_mu0 is not absolutely continuous w.r.t. P_mu1.
double kl_div(Family family, double mu0, double mu1);

// Total variation distance. Poisson sums |p(x) - q(x)| / 2 until the remaining
// tail mass of both distributions is below 1e-12.
double tvd(Family family, double mu0, double mu1);

// Poisson probability mass function; exposed for the summation-based checks.
double poisson_pmf(double lambda, unsigned long long x);

// One reward draw. Bernoulli yields 0 or 1, Poisson a non-negative count.
double sample(Family family, double mu, RandomStream& rng);

}  // namespace hb
