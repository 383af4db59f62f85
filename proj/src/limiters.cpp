#include "pampa/limiters.hpp"

namespace pampa {

LimitedTriple<1> idp_limit_scalar(double avg, double left, double mid, double right, double lo,
                                  double hi) {
  // Averages can sit a few ulps outside G after long runs; anything larger is a bug upstream.
  const double slack = 1e-13 * (hi - lo);
  if (!(avg >= lo - slack && avg <= hi + slack))
    throw InvariantViolation("scalar cell average outside [lo, hi]");
  avg = std::clamp(avg, lo, hi);

  double theta = 1.0;
  if (mid < lo) {
    theta = (avg - lo) / (avg - mid);
  } else if (mid > hi) {
    theta = (hi - avg) / (mid - avg);
  }
  const auto clip = [lo, hi](double v) { return State<1>(std::clamp(v, lo, hi)); };
  if (theta == 1.0) return {clip(left), State<1>(mid), clip(right), 1.0};
  const auto blend = [&](double v) { return clip((1.0 - theta) * avg + theta * v); };
  return {blend(left), blend(mid), blend(right), theta};
}

double minmod4(double a, double b, double c, double d) {
  if (a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0) return std::min({a, b, c, d});
  if (a < 0.0 && b < 0.0 && c < 0.0 && d < 0.0) return std::max({a, b, c, d});
  return 0.0;
}

double median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

double mp_limit(const std::array<double, 5>& averages, double value, MpSide side,
                const MpParams& params) {
  std::array<double, 5> s = averages;
  if (side == MpSide::right) std::reverse(s.begin(), s.end());
  // s = {j-5/2, j-3/2, j-1/2, j+1/2, j+3/2} in upwind orientation
  const double d_mm = s[0] - 2.0 * s[1] + s[2];  // centred on j-3/2
  const double d_m = s[1] - 2.0 * s[2] + s[3];   // centred on j-1/2
  const double d_p = s[2] - 2.0 * s[3] + s[4];   // centred on j+1/2
  const double dm4 = minmod4(4.0 * d_m - d_p, 4.0 * d_p - d_m, d_m, d_p);
  const double dm4_prev = minmod4(4.0 * d_mm - d_m, 4.0 * d_m - d_mm, d_mm, d_m);

  // Curvature enters u_MD with a minus sign and the first bracket uses the
  // two cells sharing the node; otherwise smooth monotone data gets clipped
  // at O(dx^2) and the scheme drops to second order.
  const double u_md = 0.5 * (s[2] + s[3] - dm4);
  const double u_ul = s[2] + params.alpha * (s[2] - s[1]);
  const double u_lc = s[2] + 0.5 * (s[2] - s[1]) + params.beta / 3.0 * dm4_prev;

  const double u_min =
      std::max(std::min({s[2], s[3], u_md}), std::min({s[2], u_ul, u_lc}));
  const double u_max =
      std::min(std::max({s[2], s[3], u_md}), std::max({s[2], u_ul, u_lc}));
  return median3(value, u_min, u_max);
}

double oe_sigma(const OeIndicators& ind, double s_left, double s_right) {
  const double span = s_right - s_left;
  if (!(span > 0.0)) return 0.0;
  const double wl = s_right / span;
  const double wr = -s_left / span;
  const double denom = wl * ind.d_left + wr * ind.d_right;
  if (!(denom > 1e-26 * ind.scale)) return 0.0;
  return (wl * ind.eta_left + wr * ind.eta_right) / denom;
}

double oe_theta(double sigma, double beta, double dt, double dx) {
  return std::exp(-beta * dt / dx * sigma);
}

Oscillation parse_oscillation(std::string_view name) {
  if (name == "none") return Oscillation::none;
  if (name == "oe") return Oscillation::oe;
  if (name == "mp") return Oscillation::mp;
  throw ConfigError("unknown oscillation control '" + std::string(name) + "'");
}

std::string to_string(Oscillation kind) {
  switch (kind) {
    case Oscillation::none: return "none";
    case Oscillation::oe: return "oe";
    case Oscillation::mp: return "mp";
  }
  return "?";
}

}  // namespace pampa
