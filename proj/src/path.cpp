#include "qlasso/path.hpp"

#include <cmath>

namespace qlasso {

std::string kink_event_name(KinkEvent event) {
  switch (event) {
    case KinkEvent::Init: return "Init";
    case KinkEvent::Join: return "Join";
    case KinkEvent::Cross: return "Cross";
    case KinkEvent::Stationary: return "Stationary";
  }
  return "?";
}

double RegularisationPath::lambda0() const {
  if (kinks.empty()) throw EmptyPath("path has no kinks");
  return kinks.front().lambda;
}

Vector RegularisationPath::eval(double lambda, Eigen::Index d) const {
  if (kinks.empty()) throw EmptyPath("path has no kinks");
  if (lambda >= kinks.front().lambda) return kinks.front().beta.dense(d);

  // Find the segment [lambda_{t+1}, lambda_t] containing lambda. Stationary
  // kinks can repeat a lambda value; take the last kink at-or-above lambda
  // so the interpolation uses the freshest coefficients.
  std::size_t t = 0;
  while (t + 1 < kinks.size() && kinks[t + 1].lambda >= lambda) ++t;
  const Kink& hi = kinks[t];
  if (t + 1 == kinks.size()) {
    // Below the last kink: the final segment's direction is constant beta on
    // a closed path (lambda = 0) and otherwise extrapolates from the last
    // recorded segment. With a single kink there is nothing to extrapolate.
    return hi.beta.dense(d);
  }
  const Kink& lo = kinks[t + 1];
  const double span = hi.lambda - lo.lambda;
  if (span <= 0.0) return lo.beta.dense(d);
  const double w = (hi.lambda - lambda) / span;
  return (1.0 - w) * hi.beta.dense(d) + w * lo.beta.dense(d);
}

}  // namespace qlasso
