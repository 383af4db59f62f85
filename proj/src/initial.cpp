#include "pampa/initial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pampa {

namespace {

constexpr double kPi = std::numbers::pi;

// Jiang-Shu constants
constexpr double kJsA = 0.5, kJsZ = -0.7, kJsDelta = 0.005, kJsAlpha = 10.0;
const double kJsBeta = std::log(2.0) / (36.0 * kJsDelta * kJsDelta);

double js_g1(double x, double z) { return std::exp(-kJsBeta * (x - z) * (x - z)); }

double js_g2(double x, double a) {
  const double r = kJsAlpha * (x - a);
  return std::sqrt(std::max(1.0 - r * r, 0.0));
}

double jiang_shu(double x) {
  if (x >= -0.8 && x <= -0.6)
    return (js_g1(x, kJsZ - kJsDelta) + js_g1(x, kJsZ + kJsDelta) + 4.0 * js_g1(x, kJsZ)) / 6.0;
  if (x >= -0.4 && x <= -0.2) return 1.0;
  if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
  if (x >= 0.4 && x <= 0.6)
    return (js_g2(x, kJsA - kJsDelta) + js_g2(x, kJsA + kJsDelta) + 4.0 * js_g2(x, kJsA)) / 6.0;
  return 0.0;
}

}  // namespace

bool has_profile(const std::string& name) {
  return name == "advection_smooth" || name == "jiang_shu" || name == "euler_smooth" ||
         name == "shu_osher_right";
}

Primitive evaluate_profile(const std::string& name, double x) {
  if (name == "advection_smooth") {
    const double s = std::sin(2.0 * kPi * x);
    return {1.0 + s * s * s * s};
  }
  if (name == "jiang_shu") return {jiang_shu(x)};
  if (name == "euler_smooth") return {1.0 + 0.999 * std::sin(x), 1.0, 1e-8};
  if (name == "shu_osher_right") return {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 0.1};
  throw ConfigError("unknown initial profile '" + name + "'");
}

const std::array<double, 5>& gauss5_nodes() {
  static const std::array<double, 5> nodes = [] {
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    return std::array<double, 5>{0.5 - 0.5 * b, 0.5 - 0.5 * a, 0.5, 0.5 + 0.5 * a, 0.5 + 0.5 * b};
  }();
  return nodes;
}

const std::array<double, 5>& gauss5_weights() {
  static const std::array<double, 5> weights = [] {
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    return std::array<double, 5>{0.5 * wb, 0.5 * wa, 0.5 * 128.0 / 225.0, 0.5 * wa, 0.5 * wb};
  }();
  return weights;
}

InitialCondition::InitialCondition(const InitialConfig& cfg, double a, double b)
    : cfg_(cfg), tol_(1e-12 * (b - a)) {
  if (cfg_.pieces.size() != cfg_.breaks.size() + 1)
    throw ConfigError("initial condition needs one more piece than breaks");
  if (cfg_.node_at_break.size() != cfg_.breaks.size())
    throw ConfigError("initial condition needs one node rule per break");
  for (const auto& p : cfg_.pieces)
    if (p.state.empty() && !has_profile(p.function))
      throw ConfigError("unknown initial profile '" + p.function + "'");
}

std::size_t InitialCondition::piece_index(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(cfg_.breaks.begin(), cfg_.breaks.end(), x) - cfg_.breaks.begin());
}

const Primitive& InitialCondition::piece_state(std::size_t k, double x, Primitive& scratch) const {
  const Piece& p = cfg_.pieces[k];
  if (!p.state.empty()) return p.state;
  scratch = evaluate_profile(p.function, x);
  return scratch;
}

Primitive InitialCondition::value(double x) const {
  Primitive scratch;
  return piece_state(piece_index(x), x, scratch);
}

Primitive InitialCondition::node_value(double x) const {
  for (std::size_t k = 0; k < cfg_.breaks.size(); ++k) {
    if (std::abs(x - cfg_.breaks[k]) > tol_) continue;
    Primitive sl, sr;
    const Primitive l = piece_state(k, x, sl);
    const Primitive r = piece_state(k + 1, x, sr);
    switch (cfg_.node_at_break[k]) {
      case NodeRule::left: return l;
      case NodeRule::right: return r;
      case NodeRule::mean: {
        Primitive m(l.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (l[i] + r[i]);
        return m;
      }
    }
  }
  return value(x);
}

std::vector<double> InitialCondition::kinks_in(double xl, double xr) const {
  std::vector<double> out;
  for (const auto* list : {&cfg_.breaks, &cfg_.quadrature_breaks})
    for (double k : *list)
      if (k > xl + tol_ && k < xr - tol_) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pampa
