#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modcat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Absolute/relative tolerance used by every numerical check.
struct ToleranceConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  /// Threshold for comparing quantities of magnitude `scale`.
  double threshold(double scale = 0.0) const { return abs_tol + rel_tol * std::abs(scale); }

  bool valid() const {
    return std::isfinite(abs_tol) && std::isfinite(rel_tol) && abs_tol >= 0 && rel_tol >= 0;
  }
};

enum class ErrorKind {
  ShapeMismatch,
  ObjectMismatch,
  InvalidData,
  DegenerateDuality,
  MissingCoalgebra,
  NonUnique,
  SolverFailure,
  NotIdempotent,
  NotModular,
  PreconditionFailed,
  NoDaggerStructure,
  FactorMismatch,
  ParseError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ObjectMismatch: return "ObjectMismatch";
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::DegenerateDuality: return "DegenerateDuality";
    case ErrorKind::MissingCoalgebra: return "MissingCoalgebra";
    case ErrorKind::NonUnique: return "NonUnique";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotModular: return "NotModular";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NoDaggerStructure: return "NoDaggerStructure";
    case ErrorKind::FactorMismatch: return "FactorMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// One named axiom or identity inside a report.
struct Check {
  std::string name;
  bool pass = true;
  double max_residual = 0.0;
  std::string witness;  // empty when the check passed
};

/// Structured pass/fail record. Scalars carry derived quantities (β-values, dimensions, ...).
struct Report {
  std::string subject;
  std::vector<Check> checks;
  std::map<std::string, Complex> scalars;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  bool passed(const std::string& name) const {
    const Check* c = find(name);
    if (!c) throw std::out_of_range("no check named " + name);
    return c->pass;
  }

  double residual(const std::string& name) const {
    const Check* c = find(name);
    if (!c) throw std::out_of_range("no check named " + name);
    return c->max_residual;
  }

  double max_residual() const {
    double r = 0.0;
    for (const auto& c : checks) r = std::max(r, c.max_residual);
    return r;
  }

  Check& add(std::string name, double residual, double threshold, std::string witness = {}) {
    Check c;
    c.name = std::move(name);
    c.max_residual = residual;
    c.pass = std::isfinite(residual) && residual <= threshold;
    if (!c.pass) c.witness = std::move(witness);
    checks.push_back(std::move(c));
    return checks.back();
  }

  Check& add_flag(std::string name, bool ok, std::string witness = {}) {
    Check c;
    c.name = std::move(name);
    c.pass = ok;
    if (!ok) c.witness = std::move(witness);
    checks.push_back(std::move(c));
    return checks.back();
  }

  void merge(const Report& other, const std::string& prefix = {}) {
    for (auto c : other.checks) {
      if (!prefix.empty()) c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : other.scalars) scalars[prefix + k] = v;
    for (const auto& n : other.notes) notes.push_back(n);
  }
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline std::string format_complex(Complex z) {
  char buf[96];
  if (std::abs(z.imag()) < 1e-12)
    std::snprintf(buf, sizeof buf, "%.10g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

}  // namespace modcat
