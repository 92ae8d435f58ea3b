#include "oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

double midpoint_integral(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  long double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
  return static_cast<double>(s * h);
}

double simpson_integral(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  long double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
  return static_cast<double>(s * h / 3.0);
}

double profile(double K, double N, double t) {
  if (N == 1.0) return 1.0;
  if (K == 0.0) return std::pow(t, N - 1.0);
  const double a = std::sqrt(std::abs(K) / (N - 1.0));
  return std::pow(K > 0 ? std::sin(a * t) : std::sinh(a * t), N - 1.0);
}

double heron_area(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  return std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
}

double embedded_volume(const std::vector<std::vector<double>>& v) {
  const std::size_t j = v.size() - 1;
  if (j == 0) return 1.0;
  const std::size_t m = v[0].size();
  Eigen::MatrixXd E(m, j);
  for (std::size_t c = 0; c < j; ++c)
    for (std::size_t r = 0; r < m; ++r) E(r, c) = v[c + 1][r] - v[0][r];
  double vol = std::sqrt(std::max(0.0, (E.transpose() * E).determinant()));
  for (std::size_t k = 2; k <= j; ++k) vol /= static_cast<double>(k);
  return vol;
}

std::vector<std::vector<int>> brute_cliques(int n, const std::vector<std::vector<bool>>& adj, int max_size) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    if (static_cast<int>(s.size()) > max_size) continue;
    bool clique = true;
    for (std::size_t a = 0; a < s.size() && clique; ++a)
      for (std::size_t b = a + 1; b < s.size() && clique; ++b) clique = adj[s[a]][s[b]];
    if (clique) out.push_back(s);
  }
  return out;
}

std::vector<int> maximal_separated_sizes(const std::vector<std::vector<double>>& d, double eps) {
  const int n = static_cast<int>(d.size());
  if (n > 24) throw std::invalid_argument("too many points for exhaustive search");
  std::vector<int> sizes;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = i + 1; j < n && ok; ++j)
        if ((mask & (1u << j)) && d[i][j] < eps) ok = false;
    }
    if (!ok) continue;
    bool maximal = true;
    for (int x = 0; x < n && maximal; ++x) {
      if (mask & (1u << x)) continue;
      bool far = true;
      for (int i = 0; i < n && far; ++i)
        if ((mask & (1u << i)) && d[x][i] < eps) far = false;
      if (far) maximal = false;
    }
    if (maximal) sizes.push_back(std::popcount(mask));
  }
  return sizes;
}

double fisher_path_length(const std::vector<double>& p, const std::vector<double>& q, int m) {
  const int k = static_cast<int>(p.size());
  const int nodes = m - 1;  // interior nodes
  const int nv = nodes * k;
  // x[(node) * k + i], nodes 1..m-1 stored at 0..m-2.
  Eigen::VectorXd x(nv);
  for (int t = 1; t < m; ++t)
    for (int i = 0; i < k; ++i) x((t - 1) * k + i) = p[i] + (q[i] - p[i]) * t / static_cast<double>(m);
  auto value = [&](const Eigen::VectorXd& y, int t, int i) {
    if (t == 0) return p[i];
    if (t == m) return q[i];
    return y((t - 1) * k + i);
  };
  auto energy = [&](const Eigen::VectorXd& y) {
    double e = 0;
    for (int t = 0; t < m; ++t)
      for (int i = 0; i < k; ++i) {
        const double a = value(y, t, i), b = value(y, t + 1, i);
        e += 2.0 * (a - b) * (a - b) / (a + b);
      }
    return e;
  };
  for (int iter = 0; iter < 50; ++iter) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(nv);
    std::vector<Eigen::Triplet<double>> trip;
    for (int t = 0; t < m; ++t) {
      for (int i = 0; i < k; ++i) {
        const double a = value(x, t, i), b = value(x, t + 1, i);
        const double s = a + b, dl = a - b;
        const double ga = 2.0 * dl * (a + 3.0 * b) / (s * s);
        const double gb = -2.0 * dl * (3.0 * a + b) / (s * s);
        const double s3 = s * s * s;
        const double haa = 16.0 * b * b / s3, hab = -16.0 * a * b / s3, hbb = 16.0 * a * a / s3;
        const int ia = t >= 1 ? (t - 1) * k + i : -1;
        const int ib = t + 1 <= m - 1 ? t * k + i : -1;
        if (ia >= 0) {
          grad(ia) += ga;
          trip.emplace_back(ia, ia, haa);
        }
        if (ib >= 0) {
          grad(ib) += gb;
          trip.emplace_back(ib, ib, hbb);
        }
        if (ia >= 0 && ib >= 0) {
          trip.emplace_back(ia, ib, hab);
          trip.emplace_back(ib, ia, hab);
        }
      }
    }
    // KKT: [H A^T; A 0] [dx; lambda] = [-grad; 0], A sums each node's coordinates.
    for (int t = 0; t < nodes; ++t)
      for (int i = 0; i < k; ++i) {
        trip.emplace_back(nv + t, t * k + i, 1.0);
        trip.emplace_back(t * k + i, nv + t, 1.0);
      }
    Eigen::SparseMatrix<double> KKT(nv + nodes, nv + nodes);
    KKT.setFromTriplets(trip.begin(), trip.end());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nv + nodes);
    rhs.head(nv) = -grad;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(KKT);
    if (lu.info() != Eigen::Success) throw std::runtime_error("KKT factorization failed");
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd dx = sol.head(nv);
    double step = 1.0;
    const double e0 = energy(x);
    for (;;) {
      const Eigen::VectorXd y = x + step * dx;
      if (y.minCoeff() > 0.0 && energy(y) <= e0 + 1e-300) {
        x = y;
        break;
      }
      step *= 0.5;
      if (step < 1e-12) break;
    }
    if (dx.lpNorm<Eigen::Infinity>() * step < 1e-15) break;
  }
  double length = 0;
  for (int t = 0; t < m; ++t) {
    double e = 0;
    for (int i = 0; i < k; ++i) {
      const double a = value(x, t, i), b = value(x, t + 1, i);
      e += 2.0 * (a - b) * (a - b) / (a + b);
    }
    length += std::sqrt(e);
  }
  return length;
}

double fisher_geodesic_length(const std::vector<double>& p, const std::vector<double>& q, int m) {
  const double coarse = fisher_path_length(p, q, m);
  const double fine = fisher_path_length(p, q, 2 * m);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace oracle
