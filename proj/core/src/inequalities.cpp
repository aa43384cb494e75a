#include "omlab/inequalities.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "omlab/errors.hpp"
#include "omlab/matrix_json.hpp"
#include "omlab/tolerances.hpp"

namespace omlab {

namespace {

constexpr double kHansenSpread = 3.8284271247461903;  // 1 + 2*sqrt(2)

HermitianMatrix hermitian_square(const HermitianMatrix& a) {
  return 0.5 * symmetrized_product(a, a);
}

void require_psd(const HermitianMatrix& m, const char* name) {
  const PsdCertificate cert = psd_check(m);
  if (!cert.positive)
    throw PreconditionError(std::string(name) + " must be PSD (min eigenvalue " +
                            std::to_string(cert.min_eigenvalue) + ")");
}

void add_case(SuiteReport& report, const std::string& label, double margin) {
  if (!report.extra.contains("cases")) report.extra["cases"] = nlohmann::json::array();
  report.extra["cases"].push_back({{"trial", 0}, {"label", label}, {"margin", margin}});
}

void add_matrix_failure(SuiteReport& report, const std::string& label, double min_eigenvalue,
                        std::initializer_list<const HermitianMatrix*> mats) {
  FailureRecord failure;
  failure.trial = 0;
  failure.label = label;
  failure.min_eigenvalue = min_eigenvalue;
  for (const auto* m : mats) failure.matrices.push_back(matrix_to_json(*m));
  report.failures.push_back(std::move(failure));
}

// Wraps a near-Hermitian product like C* M C.
HermitianMatrix compress(const ComplexMatrix& c, const HermitianMatrix& m) {
  return HermitianMatrix(c.adjoint() * m.matrix() * c);
}

}  // namespace

bool SpectralWindow::contains_spectrum(const HermitianMatrix& A, double tol) const {
  const Spectrum s = eigh(A);
  return s.eigenvalues.front() >= lo - tol && s.eigenvalues.back() <= hi + tol;
}

double ContractionFamily::resolution_defect() const {
  if (blocks.empty()) return 0.0;
  const int cols = blocks.front().cols();
  ComplexMatrix sum(cols, cols);
  for (const auto& c : blocks) {
    if (c.cols() != cols)
      throw DimensionError("ContractionFamily blocks must share a column dimension");
    sum += c.adjoint() * c;
  }
  return (sum - ComplexMatrix::identity(cols)).frobenius_norm();
}

std::pair<ComplexMatrix, ComplexMatrix> build_dilation(const ComplexMatrix& C) {
  const int n = C.rows();
  const int k = C.cols();
  if (n < k) throw PreconditionError("build_dilation: C must have rows >= cols");
  const double defect = (C.adjoint() * C - ComplexMatrix::identity(k)).frobenius_norm();
  if (defect > 1e-10)
    throw PreconditionError("build_dilation requires an isometry (||C*C - I|| = " +
                            std::to_string(defect) + ")");
  const HermitianMatrix cc(C * C.adjoint());
  const HermitianMatrix gap = HermitianMatrix::identity(n) - cc;
  const ComplexMatrix d = psd_sqrt(gap).matrix();
  const ComplexMatrix minus_cstar = Complex(-1.0, 0.0) * C.adjoint();
  const ComplexMatrix zero_kk = ComplexMatrix::zero(k, k);
  const ComplexMatrix u = block2x2(C, d, zero_kk, minus_cstar);
  const ComplexMatrix v = block2x2(C, Complex(-1.0, 0.0) * d, zero_kk, C.adjoint());
  for (const auto* m : {&u, &v}) {
    const double unitary_defect =
        (m->adjoint() * *m - ComplexMatrix::identity(n + k)).frobenius_norm();
    if (unitary_defect > 1e-9)
      throw ValidationError("dilation unitarity defect " + std::to_string(unitary_defect) +
                            " exceeds 1e-9");
  }
  return {u, v};
}

SuiteReport verify_subadditivity_forward(const HermitianMatrix& A, const HermitianMatrix& B,
                                         const std::vector<ScalarFunctionSpec>& fs, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("verify_subadditivity_forward: dimension mismatch");
  require_psd(A, "A");
  require_psd(B, "B");
  require_psd(symmetrized_product(A, B), "S(A,B)");

  SuiteReport report;
  report.suite = "subadd-forward";
  report.tolerances["tol"] = tol;
  report.trials = static_cast<int>(fs.size());

  const Spectrum sa = eigh(A);
  const Spectrum sb = eigh(B);
  const Spectrum ssum = eigh(A + B);
  for (const auto& f : fs) {
    const HermitianMatrix defect =
        apply_function(f, sa) + apply_function(f, sb) - apply_function(f, ssum);
    const PsdCertificate cert = psd_check(defect, tol);
    add_case(report, f.display_name(), cert.min_eigenvalue);
    if (!cert.positive)
      add_matrix_failure(report, f.display_name(), cert.min_eigenvalue, {&A, &B});
  }
  return report;
}

SuiteReport verify_subadditivity_converse(const HermitianMatrix& A, const HermitianMatrix& B,
                                          const std::vector<double>& lambda_grid, double tol) {
  if (A.dim() != B.dim())
    throw DimensionError("verify_subadditivity_converse: dimension mismatch");
  if (lambda_grid.empty())
    throw PreconditionError("verify_subadditivity_converse: empty lambda grid");
  require_psd(A, "A");
  require_psd(B, "B");
  const HermitianMatrix s = symmetrized_product(A, B);
  const double s_min = min_eigenvalue(s);
  if (!(s_min < -10.0 * tol))
    throw PreconditionError(
        "verify_subadditivity_converse requires S(A,B) indefinite with min eigenvalue < -10*tol "
        "(got " +
        std::to_string(s_min) + ")");

  SuiteReport report;
  report.suite = "subadd-converse";
  report.tolerances["tol"] = tol;
  report.trials = static_cast<int>(lambda_grid.size());
  report.params["s_min_eigenvalue"] = s_min;

  const Spectrum sa = eigh(A);
  const Spectrum sb = eigh(B);
  const Spectrum ssum = eigh(A + B);

  bool found = false;
  double found_lambda = 0.0;
  double worst_defect = std::numeric_limits<double>::infinity();
  std::vector<double> last_defect_spectrum;
  nlohmann::json grid_log = nlohmann::json::array();
  for (double lambda : lambda_grid) {
    const ScalarFunctionSpec f = lookup("f_lambda", {{"lambda", lambda}});
    const HermitianMatrix defect =
        apply_function(f, sa) + apply_function(f, sb) - apply_function(f, ssum);
    const Spectrum sd = eigh(defect);
    const double defect_min = sd.eigenvalues.front();
    worst_defect = std::min(worst_defect, defect_min);
    last_defect_spectrum = sd.eigenvalues;

    // Proof-side coupling term: vanishes like 1/lambda as lambda grows.
    const HermitianMatrix x = resolvent_product(A, lambda);
    const HermitianMatrix y = resolvent_product(B, lambda);
    const HermitianMatrix coupling(B.matrix() * x.matrix() * B.matrix() +
                                   A.matrix() * y.matrix() * A.matrix());
    const double coupling_norm = spectral_norm(coupling);

    grid_log.push_back(
        {{"lambda", lambda}, {"defect_min", defect_min}, {"coupling_norm", coupling_norm}});
    add_case(report, f.display_name(), defect_min);
    if (!found && defect_min < -tol) {
      found = true;
      found_lambda = lambda;
    }
  }
  report.extra["grid"] = std::move(grid_log);
  report.extra["worst_defect"] = worst_defect;
  if (found) {
    report.extra["found_lambda"] = found_lambda;
  } else {
    report.extra["found_lambda"] = nullptr;
    report.extra["largest_lambda_defect_spectrum"] = last_defect_spectrum;
    // Inconclusive: the grid was too short to exhibit the predicted violation.
    add_matrix_failure(report, "no-violation-found-on-grid", worst_defect, {&A, &B});
  }
  return report;
}

SuiteReport verify_gustafson(const HermitianMatrix& A, const HermitianMatrix& B,
                             const SpectralWindow& wA, const SpectralWindow& wB, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("verify_gustafson: dimension mismatch");
  if (!wA.contains_spectrum(A, tol) || !wB.contains_spectrum(B, tol))
    throw PreconditionError("verify_gustafson: window does not contain the spectrum");

  SuiteReport report;
  report.suite = "gustafson";
  report.tolerances["tol"] = tol;
  report.trials = 1;
  report.params["window_a"] = {{"lo", wA.lo}, {"hi", wA.hi}};
  report.params["window_b"] = {{"lo", wB.lo}, {"hi", wB.hi}};

  const double bound = wA.lo * wB.lo - wA.width() * wB.width() / 8.0;
  report.params["bound"] = bound;
  const HermitianMatrix lhs =
      0.5 * symmetrized_product(A, B) - bound * HermitianMatrix::identity(A.dim());
  const PsdCertificate cert = psd_check(lhs, tol);
  add_case(report, "gustafson-bound", cert.min_eigenvalue);
  if (!cert.positive)
    add_matrix_failure(report, "gustafson-bound", cert.min_eigenvalue, {&A, &B});
  return report;
}

SuiteReport verify_window_subadditivity(const HermitianMatrix& A, const HermitianMatrix& B,
                                        const SpectralWindow& wA, const SpectralWindow& wB,
                                        const std::vector<ScalarFunctionSpec>& fs, double tol) {
  const double product = wA.lo * wB.lo;
  const double spread = wA.width() * wB.width();
  if (spread > 8.0 * product + 1e-12 * (1.0 + spread))
    throw PreconditionError("verify_window_subadditivity requires (M-m)(N-n) <= 8mn; got " +
                            std::to_string(spread) + " > " + std::to_string(8.0 * product));

  // The window criterion routes through the Gustafson bound: mn - spread/8 >= 0
  // forces S(A,B) >= 0, unlocking forward subadditivity.
  SuiteReport report = verify_gustafson(A, B, wA, wB, tol);
  report.suite = "window-subadd";
  const SuiteReport forward = verify_subadditivity_forward(A, B, fs, tol);
  report.trials += forward.trials;
  for (const auto& f : forward.failures) report.failures.push_back(f);
  if (forward.extra.contains("cases"))
    for (const auto& c : forward.extra.at("cases")) report.extra["cases"].push_back(c);
  return report;
}

SuiteReport verify_power_split(const HermitianMatrix& A, const HermitianMatrix& B, double p,
                               const std::vector<ScalarFunctionSpec>& fs, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("verify_power_split: dimension mismatch");
  if (!(p >= 0.0 && p <= 0.5))
    throw PreconditionError("verify_power_split requires p in [0, 1/2]");
  require_psd(A, "A");
  if (!leq(A, B).positive)
    throw PreconditionError("verify_power_split requires A <= B");

  SuiteReport report;
  report.suite = "power-split";
  report.tolerances["tol"] = tol;
  report.params["p"] = p;

  const ScalarFunctionSpec power_p = lookup("power", {{"p", p}});
  const ScalarFunctionSpec power_2p = lookup("power", {{"p", 2.0 * p}});
  const Spectrum sa = eigh(A);
  const Spectrum sb = eigh(B);
  const HermitianMatrix ap = apply_function(power_p, sa);
  const HermitianMatrix bp = apply_function(power_p, sb);
  const HermitianMatrix a2p = apply_function(power_2p, sa);
  const HermitianMatrix b2p = apply_function(power_2p, sb);
  const HermitianMatrix s1 = 0.5 * (bp + ap);
  const HermitianMatrix s2 = 0.5 * (bp - ap);

  // Proof engine: 2(S1 S2 + S2 S1) = (S1+S2)^2 - (S1-S2)^2 = B^{2p} - A^{2p} >= 0.
  const HermitianMatrix engine = symmetrized_product(s1, s2);
  const PsdCertificate engine_cert = psd_check(engine, tol);
  add_case(report, "engine-psd", engine_cert.min_eigenvalue);
  if (!engine_cert.positive)
    add_matrix_failure(report, "engine-psd", engine_cert.min_eigenvalue, {&A, &B});

  const double identity_defect = (2.0 * engine - (b2p - a2p)).frobenius_norm();
  const double identity_scale = 1.0 + a2p.frobenius_norm() + b2p.frobenius_norm();
  add_case(report, "engine-identity", -identity_defect);
  if (identity_defect > 1e-10 * identity_scale)
    add_matrix_failure(report, "engine-identity", -identity_defect, {&A, &B});

  const Spectrum ss1 = eigh(s1);
  const Spectrum ss2 = eigh(s2);
  const Spectrum sbp = eigh(bp);
  for (const auto& f : fs) {
    const HermitianMatrix defect =
        apply_function(f, ss1) + apply_function(f, ss2) - apply_function(f, sbp);
    const PsdCertificate cert = psd_check(defect, tol);
    add_case(report, f.display_name(), cert.min_eigenvalue);
    if (!cert.positive)
      add_matrix_failure(report, f.display_name(), cert.min_eigenvalue, {&A, &B});
  }
  report.trials = 2 + static_cast<int>(fs.size());
  return report;
}

SuiteReport verify_hansen_type(const std::vector<HermitianMatrix>& As,
                               const ContractionFamily& family, const SpectralWindow& window,
                               const std::vector<ScalarFunctionSpec>& fs, double tol) {
  if (family.blocks.empty())
    throw PreconditionError("verify_hansen_type requires at least one block");
  if (!(window.lo > 0.0))
    throw PreconditionError("verify_hansen_type requires a window with lo > 0");
  const double defect = family.resolution_defect();
  if (defect > 1e-10)
    throw PreconditionError("verify_hansen_type: family resolution defect " +
                            std::to_string(defect) + " exceeds 1e-10");
  const size_t k = family.blocks.size();
  if (As.size() != k && As.size() != 1)
    throw PreconditionError("verify_hansen_type: need one matrix per block (or one shared)");

  const bool in_hypothesis = window.hi <= kHansenSpread * window.lo * (1.0 + 1e-12);
  for (const auto& a : As)
    if (!window.contains_spectrum(a, tol))
      throw PreconditionError("verify_hansen_type: window does not contain a spectrum");

  SuiteReport report;
  report.suite = "hansen";
  report.tolerances["tol"] = tol;
  report.params["window"] = {{"lo", window.lo}, {"hi", window.hi}};
  report.params["in_hypothesis"] = in_hypothesis;
  report.params["blocks"] = static_cast<int>(k);
  if (!in_hypothesis)
    report.extra["out_of_hypothesis"] = {{"spread_ratio", window.hi / window.lo},
                                         {"cases", nlohmann::json::array()},
                                         {"violations", nlohmann::json::array()}};

  auto matrix_at = [&](size_t i) -> const HermitianMatrix& {
    return As.size() == 1 ? As.front() : As[i];
  };
  bool all_equal = true;
  for (size_t i = 1; i < k && all_equal; ++i)
    all_equal = (matrix_at(i) - matrix_at(0)).frobenius_norm() == 0.0;

  auto record = [&](const std::string& label, const PsdCertificate& cert,
                    std::initializer_list<const HermitianMatrix*> mats) {
    if (in_hypothesis) {
      add_case(report, label, cert.min_eigenvalue);
      if (!cert.positive) {
        FailureRecord failure;
        failure.trial = 0;
        failure.label = label;
        failure.min_eigenvalue = cert.min_eigenvalue;
        for (const auto* m : mats) failure.matrices.push_back(matrix_to_json(*m));
        report.failures.push_back(std::move(failure));
      }
    } else {
      // Exploration: recorded, never asserted.
      report.extra["out_of_hypothesis"]["cases"].push_back(
          {{"label", label}, {"margin", cert.min_eigenvalue}});
      if (!cert.positive)
        report.extra["out_of_hypothesis"]["violations"].push_back(
            {{"label", label}, {"margin", cert.min_eigenvalue}});
    }
  };

  int checks = 0;
  for (const auto& f : fs) {
    if (k == 1) {
      const ComplexMatrix& c = family.blocks.front();
      const HermitianMatrix& a = matrix_at(0);
      const HermitianMatrix lhs = apply_function(f, compress(c, a));
      const HermitianMatrix rhs = 2.0 * compress(c, apply_function(f, 0.5 * a));
      record("part-i:" + f.display_name(), psd_check(rhs - lhs, tol), {&a});
      ++checks;
    } else {
      const int cols = family.blocks.front().cols();
      ComplexMatrix compressed_sum(cols, cols);
      for (size_t i = 0; i < k; ++i)
        compressed_sum +=
            family.blocks[i].adjoint() * matrix_at(i).matrix() * family.blocks[i];
      const HermitianMatrix lhs = apply_function(f, HermitianMatrix(compressed_sum));
      ComplexMatrix rhs_sum(cols, cols);
      for (size_t i = 0; i < k; ++i)
        rhs_sum += family.blocks[i].adjoint() *
                   apply_function(f, 0.5 * matrix_at(i)).matrix() * family.blocks[i];
      const HermitianMatrix rhs(Complex(2.0, 0.0) * rhs_sum);
      record("part-ii:" + f.display_name(), psd_check(rhs - lhs, tol), {&matrix_at(0)});
      ++checks;
    }
  }
  if (k > 1)
    // With distinct A_i the statement's right-hand side is read per-index,
    // f(A_i/2); when they coincide that literal common-A reading is the same
    // computation, which is the only case where both readings are defined.
    report.extra["literal_common_reading"] =
        all_equal ? "coincides with per-index reading (all A_i equal)"
                  : "not evaluated (A_i differ; per-index reading certified)";
  report.trials = checks;
  return report;
}

SuiteReport verify_square_order(const HermitianMatrix& A, const HermitianMatrix& B,
                                const std::vector<ScalarFunctionSpec>& fs_convex, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("verify_square_order: dimension mismatch");
  require_psd(A, "A");
  require_psd(B, "B");

  SuiteReport report;
  report.suite = "square-order";
  report.tolerances["tol"] = tol;

  // Remark: S(A-B, A+B) = 2(A^2 - B^2) is pure algebra, no spectral step.
  const HermitianMatrix a2 = hermitian_square(A);
  const HermitianMatrix b2 = hermitian_square(B);
  const HermitianMatrix remark_lhs = symmetrized_product(A - B, A + B);
  const double remark_defect = (remark_lhs - 2.0 * (a2 - b2)).frobenius_norm();
  const double remark_scale =
      (1.0 + A.frobenius_norm() + B.frobenius_norm()) * (1.0 + A.frobenius_norm() + B.frobenius_norm());
  add_case(report, "remark-identity", -remark_defect);
  if (remark_defect > 1e-12 * remark_scale)
    add_matrix_failure(report, "remark-identity", -remark_defect, {&A, &B});

  const PsdCertificate order_cert = psd_check(a2 - b2, tol);
  report.extra["square_order_min_eigenvalue"] = order_cert.min_eigenvalue;
  int checks = 1;
  if (order_cert.positive) {
    report.extra["branch"] = "forward";
    const Spectrum sa = eigh(A);
    const Spectrum sb = eigh(B);
    for (const auto& f : fs_convex) {
      const HermitianMatrix defect = apply_function(f, sa) - apply_function(f, sb);
      const PsdCertificate cert = psd_check(defect, tol);
      add_case(report, "forward:" + f.display_name(), cert.min_eigenvalue);
      if (!cert.positive)
        add_matrix_failure(report, "forward:" + f.display_name(), cert.min_eigenvalue, {&A, &B});
      ++checks;
    }
  } else {
    report.extra["branch"] = "converse";
    // The t^2 witness, taken through the functional-calculus route rather than
    // the matrix product that decided the branch.
    const ScalarFunctionSpec t2 = lookup("t_squared");
    const HermitianMatrix defect = apply_function(t2, A) - apply_function(t2, B);
    const PsdCertificate cert = psd_check(defect, tol);
    add_case(report, "converse-witness:t_squared", cert.min_eigenvalue);
    if (cert.positive)
      add_matrix_failure(report, "converse-witness-missing", cert.min_eigenvalue, {&A, &B});
    ++checks;
  }
  report.trials = checks;
  return report;
}

SuiteReport verify_power_monotone(const HermitianMatrix& A, const HermitianMatrix& B, double p,
                                  const std::vector<ScalarFunctionSpec>& fs_convex, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("verify_power_monotone: dimension mismatch");
  if (!(p >= 0.0 && p <= 0.5))
    throw PreconditionError("verify_power_monotone requires p in [0, 1/2]");
  require_psd(B, "B");
  if (!leq(B, A).positive)
    throw PreconditionError("verify_power_monotone requires B <= A");

  SuiteReport report;
  report.suite = "power-monotone";
  report.tolerances["tol"] = tol;
  report.params["p"] = p;

  const ScalarFunctionSpec power_p = lookup("power", {{"p", p}});
  const Spectrum sap = eigh(apply_function(power_p, A));
  const Spectrum sbp = eigh(apply_function(power_p, B));
  for (const auto& f : fs_convex) {
    const HermitianMatrix defect = apply_function(f, sap) - apply_function(f, sbp);
    const PsdCertificate cert = psd_check(defect, tol);
    add_case(report, f.display_name(), cert.min_eigenvalue);
    if (!cert.positive)
      add_matrix_failure(report, f.display_name(), cert.min_eigenvalue, {&A, &B});
  }
  report.trials = static_cast<int>(fs_convex.size());
  return report;
}

SuiteReport verify_tf_corollary(const HermitianMatrix& A, const HermitianMatrix& B, double p,
                                const ScalarFunctionSpec& f, double tol) {
  if (A.dim() != B.dim()) throw DimensionError("verify_tf_corollary: dimension mismatch");
  if (!(p >= 0.0 && p <= 0.5))
    throw PreconditionError("verify_tf_corollary requires p in [0, 1/2]");
  if (!f.has_tag(FunctionTag::nonneg_operator_monotone))
    throw PreconditionError("verify_tf_corollary requires a non-negative operator monotone f");
  require_psd(B, "B");
  if (!leq(B, A).positive)
    throw PreconditionError("verify_tf_corollary requires B <= A");

  SuiteReport report;
  report.suite = "tf-corollary";
  report.tolerances["tol"] = tol;
  report.params["p"] = p;
  report.params["function"] = f.display_name();

  const Spectrum sa = eigh(A);
  const Spectrum sb = eigh(B);

  // (i) h1(t) = t^p f(t^p) = (s f(s)) o t^p is operator monotone.
  const ScalarFunctionSpec h1 = compose(times_t(f), lookup("power", {{"p", p}}));
  {
    const HermitianMatrix defect = apply_function(h1, sa) - apply_function(h1, sb);
    const PsdCertificate cert = psd_check(defect, tol);
    add_case(report, "part-i:" + f.display_name(), cert.min_eigenvalue);
    if (!cert.positive)
      add_matrix_failure(report, "part-i:" + f.display_name(), cert.min_eigenvalue, {&A, &B});
  }

  // (ii) h2(t) = t^{p-1} f(t^p) reverses the order; needs invertible inputs
  // and f strictly positive away from zero.
  const double floor = 10.0 * tol;
  if (sa.eigenvalues.front() <= floor || sb.eigenvalues.front() <= floor)
    throw PreconditionError(
        "verify_tf_corollary branch (ii) requires invertible inputs (min eigenvalue > 10*tol)");
  for (double probe : {1e-6, 1e-3, 1.0, 1e3})
    if (!(f.eval(probe) > 0.0))
      throw PreconditionError(
          "verify_tf_corollary branch (ii) requires f strictly positive on (0, inf)");
  ScalarFunctionSpec h2;
  h2.id = "t^(p-1)f(t^p)[" + f.display_name() + "]";
  h2.domain = Interval::positive();
  {
    auto feval = f.eval;
    auto fderiv = f.deriv;
    const double pp = p;
    h2.eval = [feval, pp](double t) { return std::pow(t, pp - 1.0) * feval(std::pow(t, pp)); };
    h2.deriv = [feval, fderiv, pp](double t) {
      const double tp = std::pow(t, pp);
      return (pp - 1.0) * std::pow(t, pp - 2.0) * feval(tp) +
             pp * std::pow(t, 2.0 * pp - 2.0) * fderiv(tp);
    };
  }
  {
    const HermitianMatrix defect = apply_function(h2, sb) - apply_function(h2, sa);
    const PsdCertificate cert = psd_check(defect, tol);
    add_case(report, "part-ii:" + f.display_name(), cert.min_eigenvalue);
    if (!cert.positive)
      add_matrix_failure(report, "part-ii:" + f.display_name(), cert.min_eigenvalue, {&A, &B});
  }
  report.trials = 2;
  return report;
}

}  // namespace omlab
