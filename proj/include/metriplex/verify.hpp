/// \file
/// Property-verification suites that certify a candidate bundle before it
/// is integrated.  Checks are sampled with a seeded generator so reports
/// are reproducible; assembly is a max-reduction, order independent.

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "metriplex/brackets.hpp"
#include "metriplex/dense.hpp"
#include "metriplex/fields.hpp"
#include "metriplex/system.hpp"
#include "metriplex/tensor_core.hpp"

namespace metriplex {

struct CheckResult {
  std::string name;
  double max_defect = 0;
  double tolerance = 0;
  bool pass = false;
  long sample_count = 0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool verdict() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void add(std::string name, double defect, double tol, long samples) {
    checks.push_back({std::move(name), defect, tol, defect <= tol, samples});
  }

  /// Informational entry: recorded but never fails the verdict.
  void add_info(std::string name, double defect, long samples) {
    checks.push_back({std::move(name), defect, std::numeric_limits<double>::infinity(), true, samples});
  }

  void merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["verdict"] = verdict();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json entry{{"name", c.name},
                           {"max_defect", c.max_defect},
                           {"pass", c.pass},
                           {"sample_count", c.sample_count}};
      // informational entries carry an infinite tolerance, which JSON
      // cannot represent as a number
      if (std::isfinite(c.tolerance))
        entry["tolerance"] = c.tolerance;
      else
        entry["tolerance"] = "informational";
      j["checks"].push_back(std::move(entry));
    }
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  max_defect=" << c.max_defect
         << "  tol=" << c.tolerance << "  samples=" << c.sample_count << "\n";
    }
    os << "verdict: " << (verdict() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }
};

struct VerifyOptions {
  int samples = 100;
  int covector_pairs = 1000;
  std::uint64_t seed = 0;
  double box_lo = -1.0;
  double box_hi = 1.0;
};

inline std::vector<Vec> sample_states(int dim, const VerifyOptions& opt) {
  auto rng = seeded_engine(opt.seed);
  std::vector<Vec> out;
  out.reserve(opt.samples);
  for (int s = 0; s < opt.samples; ++s) out.push_back(random_vec(rng, dim, opt.box_lo, opt.box_hi));
  return out;
}

/// Jacobiator J^{il} d_l J^{jk} + J^{jl} d_l J^{ki} + J^{kl} d_l J^{ij}
/// at each sample; the derivative comes from the field's partial oracle.
inline VerificationReport verify_jacobi(const PoissonField& J, const std::vector<Vec>& samples,
                                        double tol = 1e-8) {
  const int n = J.dim;
  double worst_jac = 0, worst_anti = 0;
  for (const Vec& z : samples) {
    const Mat Jz = J(z);
    const Rank3 dJ = J.partial(z);
    worst_anti = std::max(worst_anti, Jz.symmetry_defect());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double t = 0;
          for (int l = 0; l < n; ++l)
            t += Jz(i, l) * dJ(j, k, l) + Jz(j, l) * dJ(k, i, l) + Jz(k, l) * dJ(i, j, l);
          worst_jac = std::max(worst_jac, std::abs(t));
        }
  }
  VerificationReport r;
  r.add("poisson_antisymmetry", worst_anti, kDefaultAtol, static_cast<long>(samples.size()));
  r.add("jacobi_identity", worst_jac, tol, static_cast<long>(samples.size()));
  return r;
}

/// Symmetry defects of the 4-tensor at each sample plus sampled sectional
/// curvature.  The cyclic identity counts against the verdict only when the
/// field claims it; likewise positivity only for psd-flagged fields, with
/// the sampled minimum always reported.
inline VerificationReport verify_minimal_metriplectic(const FourBracketField& R,
                                                      const std::vector<Vec>& samples,
                                                      const VerifyOptions& opt = {},
                                                      double atol = kDefaultAtol) {
  const int n = R.dim;
  auto rng = seeded_engine(opt.seed + 1);
  SymmetryDefects worst;
  double min_curv = std::numeric_limits<double>::infinity();
  for (const Vec& z : samples) {
    const Rank4 Rz = R(z);
    const SymmetryDefects d = symmetry_defects(Rz);
    worst.d12 = std::max(worst.d12, d.d12);
    worst.d34 = std::max(worst.d34, d.d34);
    worst.dpair = std::max(worst.dpair, d.dpair);
    worst.dcyclic = std::max(worst.dcyclic, d.dcyclic);
    for (int p = 0; p < opt.covector_pairs; ++p) {
      const Vec a = random_vec(rng, n), b = random_vec(rng, n);
      min_curv = std::min(min_curv, sectional_curvature_from(Rz, a, b));
    }
  }
  const long ns = static_cast<long>(samples.size());
  VerificationReport r;
  r.add("first_pair_antisymmetry", worst.d12, atol, ns);
  r.add("second_pair_antisymmetry", worst.d34, atol, ns);
  r.add("pair_interchange", worst.dpair, atol, ns);
  if (R.algebraic)
    r.add("cyclic_identity", worst.dcyclic, std::max(atol, 1e-8), ns);
  else
    r.add_info("cyclic_identity(informational)", worst.dcyclic, ns);
  const long np = ns * opt.covector_pairs;
  if (R.psd)
    r.add("sectional_curvature_nonnegative", std::max(0.0, -min_curv), atol, np);
  else
    r.add_info("sectional_curvature_min(informational)", min_curv, np);
  return r;
}

/// Degeneracy axioms J dS = 0 and G dH = 0 over the samples.
inline VerificationReport verify_degeneracy(const MetriplecticSystem& sys,
                                            const std::vector<Vec>& samples, double tol = 1e-10) {
  double worst_jds = 0, worst_gdh = 0;
  for (const Vec& z : samples) {
    const Vec gS = sys.S.gradient(z);
    const Vec gH = sys.H.gradient(z);
    const Vec jds = sys.J(z).apply(gS);
    const Vec gdh = g_metric_from(sys.R(z), gH).apply(gH);
    for (double v : jds) worst_jds = std::max(worst_jds, std::abs(v));
    for (double v : gdh) worst_gdh = std::max(worst_gdh, std::abs(v));
  }
  const long ns = static_cast<long>(samples.size());
  VerificationReport r;
  r.add("entropy_is_casimir_JdS", worst_jds, tol, ns);
  r.add("gmetric_annihilates_dH", worst_gdh, tol, ns);
  return r;
}

/// Agreement of an analytic gradient with central differences, relative to
/// the analytic magnitude.
inline VerificationReport verify_gradient(const ScalarField& f, const std::vector<Vec>& samples,
                                          double tol = 1e-5) {
  if (!f.has_analytic_gradient())
    throw std::invalid_argument("verify_gradient: field has no analytic gradient");
  double worst = 0;
  for (const Vec& z : samples) {
    const Vec ga = f.grad(z);
    const Vec gf = f.fd_gradient(z);
    double diff = 0;
    for (std::size_t i = 0; i < ga.size(); ++i) diff = std::max(diff, std::abs(ga[i] - gf[i]));
    worst = std::max(worst, diff / std::max(1.0, norm2(ga)));
  }
  VerificationReport r;
  r.add("gradient_consistency", worst, tol, static_cast<long>(samples.size()));
  return r;
}

}  // namespace metriplex
