#include "dissgeo/qcore.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dissgeo::qcore {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw ArgumentError("matmul: inner dimensions " + std::to_string(a.cols()) +
                        " and " + std::to_string(b.rows()) + " differ");
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Tolerant lexicographic key: imaginary part descending, then real ascending.
bool eigen_order(const Complex& x, const Complex& y) {
  const double tol = 1e-12 * (1.0 + std::max(std::abs(x), std::abs(y)));
  if (std::abs(x.imag() - y.imag()) > tol) return x.imag() > y.imag();
  return x.real() < y.real() - tol;
}

}  // namespace

EigenDecomposition eig_small(const ComplexMatrix& a, double residual_tol) {
  if (a.rows() != a.cols()) throw ArgumentError("eig_small: matrix not square");
  if (a.rows() == 0 || static_cast<std::size_t>(a.rows()) > kMaxEigDim)
    throw ArgumentError("eig_small: dimension must be in [1, 8]");

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
  if (solver.info() != Eigen::Success)
    throw NumericError("eig_small: eigensolver did not converge",
                       std::numeric_limits<double>::infinity());

  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const ComplexVector& raw_values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return eigen_order(raw_values(i), raw_values(j));
  });

  EigenDecomposition out{ComplexVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = raw_values(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }

  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const ComplexVector v = out.vectors.col(k);
    worst = std::max(worst, (a * v - out.values(k) * v).norm() / std::max(v.norm(), 1e-300));
  }
  if (worst > residual_tol * scale)
    throw NumericError("eig_small: eigenpair residual " + std::to_string(worst) +
                           " exceeds tolerance",
                       worst);
  return out;
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

ComplexMatrix expm_series(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("expm_series: matrix not square");
  const Eigen::Index n = m.rows();
  // Scale until the 1-norm is at most 1/2.
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const ComplexMatrix scaled = m / std::ldexp(1.0, squarings);

  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.norm() <= 1e-18 * result.norm()) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

ComplexVector matrix_exp_action(const ComplexMatrix& a, double t, const ComplexVector& v0,
                                double cond_limit) {
  if (a.rows() != a.cols()) throw ArgumentError("matrix_exp_action: matrix not square");
  if (a.cols() != v0.size()) throw ArgumentError("matrix_exp_action: vector size mismatch");
  if (t == 0.0 || a.isZero(0.0)) return v0;

  bool use_series = false;
  EigenDecomposition eig;
  try {
    eig = eig_small(a);
    use_series = condition_number(eig.vectors) > cond_limit;
  } catch (const NumericError&) {
    use_series = true;
  }
  if (use_series) return expm_series(Complex(0.0, -t) * a) * v0;

  const ComplexVector coeffs = eig.vectors.partialPivLu().solve(v0);
  ComplexVector weighted(coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    weighted(k) = std::exp(Complex(0.0, -t) * eig.values(k)) * coeffs(k);
  return eig.vectors * weighted;
}

double default_step(double gamma_tilde_max, double t0, double t1) {
  if (!(gamma_tilde_max > 0.0)) throw ArgumentError("default_step: rate must be positive");
  if (!(t1 > t0)) throw ArgumentError("default_step: t1 must exceed t0");
  return std::min(0.01 / gamma_tilde_max, (t1 - t0) / 1e5);
}

std::size_t rk4_step_count(double t0, double t1, double step) {
  const double ratio = (t1 - t0) / step;
  const auto n = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
  return std::max<std::size_t>(n, 1);
}

Samples<ComplexVector> rk4_evolve(const LinearRhs& rhs, const ComplexVector& y0, double t0,
                                  double t1, double step, std::size_t stride) {
  Samples<ComplexVector> out;
  rk4_integrate(
      [&](double t, const ComplexVector& y, ComplexVector& dy) { rhs(t, y, dy); }, y0, t0,
      t1, step, stride, [&](std::size_t, double t, const ComplexVector& y) {
        out.times.push_back(t);
        out.values.push_back(y);
      });
  return out;
}

}  // namespace dissgeo::qcore
