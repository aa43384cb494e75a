#include "omlab/sampler.hpp"

#include <cmath>
#include <random>

#include "omlab/errors.hpp"

namespace omlab {

namespace {

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g.at(i, j) = Complex(re, im);
    }
  return g;
}

// QR of a complex Gaussian via modified Gram-Schmidt (one re-orthogonalization
// pass). The R diagonal is real positive by construction, which is exactly the
// phase fixing that makes Q a Haar sample.
ComplexMatrix haar_isometry(int rows, int cols, std::mt19937_64& rng) {
  if (rows < cols) throw PreconditionError("haar_isometry requires rows >= cols");
  ComplexMatrix q(rows, cols);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int j = 0; j < cols; ++j) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      std::vector<Complex> v(rows);
      for (int i = 0; i < rows; ++i) v[i] = Complex(gauss(rng), gauss(rng));
      const double original_norm = vector_norm(v);
      for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < j; ++k) {
          Complex proj{};
          for (int i = 0; i < rows; ++i) proj += std::conj(q.at(i, k)) * v[i];
          for (int i = 0; i < rows; ++i) v[i] -= proj * q.at(i, k);
        }
      }
      const double norm = vector_norm(v);
      if (norm > 1e-8 * (1.0 + original_norm)) {
        for (int i = 0; i < rows; ++i) q.at(i, j) = v[i] / norm;
        break;
      }
      if (attempt == 99)
        throw GenerationError("haar_isometry: persistent rank deficiency", 100, j);
    }
  }
  return q;
}

std::vector<double> halfnormal_values(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> vals(n);
  for (auto& v : vals) v = std::abs(gauss(rng));
  // Scale normalization contract: spectral norm <= 10.
  double top = 0.0;
  for (double v : vals) top = std::max(top, v);
  if (top > 10.0)
    for (auto& v : vals) v *= 10.0 / top;
  return vals;
}

HermitianMatrix random_psd(int dim, std::mt19937_64& rng) {
  const ComplexMatrix q = haar_isometry(dim, dim, rng);
  return assemble_hermitian(q, halfnormal_values(dim, rng));
}

HermitianMatrix random_psd_window(int dim, double lo, double hi, std::mt19937_64& rng) {
  const ComplexMatrix q = haar_isometry(dim, dim, rng);
  std::uniform_real_distribution<double> unif(lo, hi);
  std::vector<double> vals(dim);
  for (auto& v : vals) v = unif(rng);
  return assemble_hermitian(q, vals);
}

HermitianMatrix half_symmetrized_square(const HermitianMatrix& a) {
  return 0.5 * symmetrized_product(a, a);  // exactly Hermitian A*A
}

double pair_scale(const HermitianMatrix& a, const HermitianMatrix& b) {
  return spectral_norm(a) * spectral_norm(b);
}

int rejection_budget(int dim) { return 10 * dim * dim; }

void verify_or_throw(bool ok, const char* kind) {
  if (!ok)
    throw GenerationError(std::string("generator bug: ") + kind +
                              " instance failed its defining predicate re-check",
                          0, 0);
}

Instance generate_impl(const InstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  Instance out;
  out.spec = spec;
  const int dim = spec.dim;

  switch (spec.kind) {
    case InstanceKind::psd: {
      out.matrices.push_back(random_psd(dim, rng));
      verify_or_throw(min_eigenvalue(out.matrices[0]) >= -1e-10, "psd");
      break;
    }
    case InstanceKind::psd_window: {
      if (!(spec.window_lo >= 0.0 && spec.window_hi >= spec.window_lo))
        throw PreconditionError("psd_window requires 0 <= lo <= hi");
      out.matrices.push_back(random_psd_window(dim, spec.window_lo, spec.window_hi, rng));
      const Spectrum s = eigh(out.matrices[0]);
      verify_or_throw(s.eigenvalues.front() >= spec.window_lo - 1e-10 &&
                          s.eigenvalues.back() <= spec.window_hi + 1e-10,
                      "psd_window");
      break;
    }
    case InstanceKind::ordered_pair_leq: {
      const HermitianMatrix b = random_psd(dim, rng);
      const HermitianMatrix p = random_psd(dim, rng);
      out.matrices.push_back(b);
      out.matrices.push_back(b + p);
      verify_or_throw(min_eigenvalue(out.matrices[1] - out.matrices[0]) >= -1e-10,
                      "ordered_pair_leq");
      break;
    }
    case InstanceKind::ordered_pair_sq_leq: {
      const HermitianMatrix a = random_psd(dim, rng);
      const HermitianMatrix a2 = half_symmetrized_square(a);
      const int budget = rejection_budget(dim);
      HermitianMatrix p = HermitianMatrix::zero(dim);
      bool found = false;
      for (int attempt = 0; attempt < budget; ++attempt) {
        p = random_psd(dim, rng);
        if (min_eigenvalue(a2 - p) >= 0.0) {
          found = true;
          break;
        }
        ++out.rejections;
      }
      if (!found) {
        // Scale the last candidate until it fits under A^2.
        const double top = spectral_norm(p);
        const double room = std::max(min_eigenvalue(a2), 0.0);
        p = (top > 0.0 ? 0.5 * room / top : 0.0) * p;
        out.fallback_used = true;
      }
      out.matrices.push_back(a);
      out.matrices.push_back(psd_sqrt(a2 - p));
      const HermitianMatrix b2 = half_symmetrized_square(out.matrices[1]);
      verify_or_throw(min_eigenvalue(a2 - b2) >= -1e-10, "ordered_pair_sq_leq");
      break;
    }
    case InstanceKind::jordan_positive_pair: {
      const int budget = rejection_budget(dim);
      bool found = false;
      for (int attempt = 0; attempt < budget; ++attempt) {
        HermitianMatrix a = random_psd(dim, rng);
        HermitianMatrix b = random_psd(dim, rng);
        if (min_eigenvalue(symmetrized_product(a, b)) >= 0.0) {
          out.matrices = {std::move(a), std::move(b)};
          found = true;
          break;
        }
        ++out.rejections;
      }
      if (!found) {
        // Commuting PSD pairs always satisfy S(A,B) = 2AB >= 0.
        const ComplexMatrix q = haar_isometry(dim, dim, rng);
        out.matrices = {assemble_hermitian(q, halfnormal_values(dim, rng)),
                        assemble_hermitian(q, halfnormal_values(dim, rng))};
        out.fallback_used = true;
      }
      verify_or_throw(
          min_eigenvalue(symmetrized_product(out.matrices[0], out.matrices[1])) >= -1e-10,
          "jordan_positive_pair");
      break;
    }
    case InstanceKind::jordan_indefinite_pair: {
      const int budget = rejection_budget(dim);
      for (int attempt = 0; attempt < budget; ++attempt) {
        HermitianMatrix a = random_psd(dim, rng);
        HermitianMatrix b = random_psd(dim, rng);
        const double scale = pair_scale(a, b);
        if (min_eigenvalue(symmetrized_product(a, b)) < -1e-3 * scale) {
          out.matrices = {std::move(a), std::move(b)};
          break;
        }
        ++out.rejections;
      }
      if (out.matrices.empty())
        throw GenerationError(
            "jordan_indefinite_pair: rejection budget exhausted (accepted 0 of " +
                std::to_string(budget) + " draws)",
            budget, 0);
      verify_or_throw(min_eigenvalue(symmetrized_product(out.matrices[0], out.matrices[1])) <
                          -1e-3 * pair_scale(out.matrices[0], out.matrices[1]),
                      "jordan_indefinite_pair");
      break;
    }
    case InstanceKind::isometry: {
      const int rows = spec.rows > 0 ? spec.rows : dim;
      if (rows < dim) throw PreconditionError("isometry requires rows >= dim (columns)");
      out.blocks.push_back(haar_isometry(rows, dim, rng));
      const ComplexMatrix& c = out.blocks[0];
      verify_or_throw((c.adjoint() * c - ComplexMatrix::identity(dim)).frobenius_norm() <= 1e-10,
                      "isometry");
      break;
    }
    case InstanceKind::resolution_of_identity: {
      const int count = spec.count;
      if (count < 1) throw PreconditionError("resolution_of_identity requires count >= 1");
      // Ridge keeps the normalizer T well conditioned so the defect stays
      // within the 1e-10 predicate.
      std::vector<HermitianMatrix> rs;
      HermitianMatrix t = HermitianMatrix::zero(dim);
      for (int i = 0; i < count; ++i) {
        rs.push_back(random_psd(dim, rng) + 1e-3 * HermitianMatrix::identity(dim));
        t = t + rs.back();
      }
      const Spectrum ts = eigh(t);
      std::vector<double> inv_sqrt(dim);
      for (int i = 0; i < dim; ++i) inv_sqrt[i] = 1.0 / std::sqrt(ts.eigenvalues[i]);
      const HermitianMatrix tis = assemble_hermitian(ts.eigenvectors, inv_sqrt);
      ComplexMatrix defect = ComplexMatrix::identity(dim);
      defect *= Complex(-1.0, 0.0);
      for (int i = 0; i < count; ++i) {
        const HermitianMatrix m(tis.matrix() * rs[i].matrix() * tis.matrix());
        out.blocks.push_back(psd_sqrt(m).matrix());
        defect += out.blocks.back().adjoint() * out.blocks.back();
      }
      verify_or_throw(defect.frobenius_norm() <= 1e-10, "resolution_of_identity");
      break;
    }
  }
  return out;
}

double round_to(double v, double grid) { return std::round(v / grid) * grid; }

Instance round_entries(const Instance& inst, double grid) {
  Instance out = inst;
  out.matrices.clear();
  for (const auto& m : inst.matrices) {
    ComplexMatrix r(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        r.at(i, j) = Complex(round_to(m.at(i, j).real(), grid), round_to(m.at(i, j).imag(), grid));
    out.matrices.emplace_back(std::move(r));
  }
  return out;
}

Instance drop_index(const Instance& inst, int drop) {
  Instance out = inst;
  out.matrices.clear();
  const int n = inst.matrices.front().dim();
  for (const auto& m : inst.matrices) {
    ComplexMatrix r(n - 1, n - 1);
    int ri = 0;
    for (int i = 0; i < n; ++i) {
      if (i == drop) continue;
      int rj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == drop) continue;
        r.at(ri, rj) = m.at(i, j);
        ++rj;
      }
      ++ri;
    }
    out.matrices.emplace_back(std::move(r));
  }
  out.spec.dim = n - 1;
  return out;
}

Instance blend_toward_identity(const Instance& inst, double alpha) {
  Instance out = inst;
  out.matrices.clear();
  for (const auto& m : inst.matrices)
    out.matrices.push_back((1.0 - alpha) * m + alpha * HermitianMatrix::identity(m.dim()));
  return out;
}

}  // namespace

const char* instance_kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::psd: return "psd";
    case InstanceKind::psd_window: return "psd_window";
    case InstanceKind::ordered_pair_leq: return "ordered_pair_leq";
    case InstanceKind::ordered_pair_sq_leq: return "ordered_pair_sq_leq";
    case InstanceKind::jordan_positive_pair: return "jordan_positive_pair";
    case InstanceKind::jordan_indefinite_pair: return "jordan_indefinite_pair";
    case InstanceKind::isometry: return "isometry";
    case InstanceKind::resolution_of_identity: return "resolution_of_identity";
  }
  return "unknown";
}

Instance generate(const InstanceSpec& spec) {
  if (spec.dim < 1 || spec.dim > 64)
    throw PreconditionError("instance dimension must lie in [1, 64]");
  return generate_impl(spec);
}

Instance shrink(const Instance& instance,
                const std::function<bool(const Instance&)>& failing_predicate) {
  int evaluations = 0;
  constexpr int kBudget = 200;
  auto still_failing = [&](const Instance& candidate) {
    if (evaluations >= kBudget) return false;
    ++evaluations;
    try {
      return failing_predicate(candidate);
    } catch (const Error&) {
      return false;  // simplification broke the instance's hypotheses
    }
  };

  if (!failing_predicate(instance))
    throw PreconditionError("shrink requires an instance on which the predicate fails");

  Instance best = instance;

  // Dimension reduction by principal submatrices (not applicable once
  // rectangular blocks are involved).
  if (best.blocks.empty()) {
    bool reduced = true;
    while (reduced && best.matrices.size() > 0 && best.matrices.front().dim() > 1 &&
           evaluations < kBudget) {
      reduced = false;
      const int n = best.matrices.front().dim();
      for (int drop = n - 1; drop >= 0; --drop) {
        Instance candidate = drop_index(best, drop);
        if (still_failing(candidate)) {
          best = std::move(candidate);
          reduced = true;
          break;
        }
      }
    }
  }

  // Entry rounding, coarsest grid first.
  if (!best.matrices.empty()) {
    for (double grid : {1.0, 0.1, 0.01, 0.001}) {
      Instance candidate = round_entries(best, grid);
      if (still_failing(candidate)) {
        best = std::move(candidate);
        break;
      }
    }
  }

  // Interpolation toward the identity.
  if (!best.matrices.empty()) {
    double alpha = 0.5;
    while (alpha > 0.05 && evaluations < kBudget) {
      Instance candidate = blend_toward_identity(best, alpha);
      if (still_failing(candidate))
        best = std::move(candidate);
      else
        alpha *= 0.5;
    }
  }

  return best;
}

}  // namespace omlab
