#include "pampa/transform.hpp"

namespace pampa {

PointVariables parse_point_variables(std::string_view name) {
  if (name == "automatic_idp" || name == "idp") return PointVariables::automatic_idp;
  if (name == "primitive") return PointVariables::primitive;
  throw ConfigError("unknown point variables '" + std::string(name) + "'");
}

std::string to_string(PointVariables kind) {
  return kind == PointVariables::automatic_idp ? "automatic_idp" : "primitive";
}

Matrix<7> mhd_primitive_jacobian(const Mhd& sys, const State<7>& prim) {
  const double rho = prim[0], vx = prim[1];
  const double by = prim[4], bz = prim[5], p = prim[6];
  const double bx = sys.bx();
  Matrix<7> a = Matrix<7>::Zero();
  for (int i = 0; i < 7; ++i) a(i, i) = vx;
  a(0, 1) = rho;
  a(1, 4) = by / rho;
  a(1, 5) = bz / rho;
  a(1, 6) = 1.0 / rho;
  a(2, 4) = -bx / rho;
  a(3, 5) = -bx / rho;
  a(4, 1) = by;
  a(4, 2) = -bx;
  a(5, 1) = bz;
  a(5, 3) = -bx;
  a(6, 1) = sys.gamma() * p;
  return a;
}

Matrix<7> mhd_variable_change(const Mhd& sys, const State<7>& prim) {
  const double rho = prim[0], p = prim[6];
  Matrix<7> t = Matrix<7>::Identity();
  t(0, 0) = softplus_inverse_slope(rho, sys.rho_ref());
  t(6, 0) = -sys.gamma() / rho;
  t(6, 6) = 1.0 / p;
  return t;
}

Matrix<7> mhd_variable_change_inverse(const Mhd& sys, const State<7>& prim) {
  const double rho = prim[0], p = prim[6];
  const double slope = softplus_inverse_slope(rho, sys.rho_ref());
  Matrix<7> t = Matrix<7>::Identity();
  t(0, 0) = 1.0 / slope;
  t(6, 0) = sys.gamma() * p / (rho * slope);
  t(6, 6) = p;
  return t;
}

Matrix<7> jacobian_transformed(const Mhd& sys, const State<7>& u, PointVariables kind) {
  const State<7> prim = sys.to_primitive(u);
  const Matrix<7> a = mhd_primitive_jacobian(sys, prim);
  if (kind == PointVariables::primitive) return a;
  if (!(prim[0] > 0.0) || !(prim[6] > 0.0))
    throw DomainError("MHD Jacobian requested outside G");
  return mhd_variable_change(sys, prim) * a * mhd_variable_change_inverse(sys, prim);
}

}  // namespace pampa
