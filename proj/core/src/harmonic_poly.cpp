#include "qlip/harmonic_poly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qlip {

Polynomial Polynomial::monomial(Exponents e, double c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::constant(int dim, double c) {
  Polynomial p(dim);
  p.add_term(Exponents(static_cast<std::size_t>(dim), 0), c);
  return p;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    deg = std::max(deg, s);
  }
  return deg;
}

void Polynomial::add_term(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
  } else {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.dim_ ? a.dim_ : b.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e = ea;
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::scaled(double s) const {
  Polynomial r(dim_);
  if (s == 0.0) return r;
  for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
  return r;
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<std::size_t>(axis)];
    if (k == 0) continue;
    Exponents e2 = e;
    e2[static_cast<std::size_t>(axis)] = k - 1;
    r.add_term(e2, c * k);
  }
  return r;
}

Polynomial Polynomial::laplacian() const {
  Polynomial r(dim_);
  for (int a = 0; a < dim_; ++a) r += derivative(a).derivative(a);
  return r;
}

double Polynomial::eval(const std::vector<double>& x) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

std::vector<double> Polynomial::gradient_at(const std::vector<double>& x) const {
  std::vector<double> g(static_cast<std::size_t>(dim_), 0.0);
  for (int a = 0; a < dim_; ++a) g[static_cast<std::size_t>(a)] = derivative(a).eval(x);
  return g;
}

long harmonic_dimension(int d, int m) {
  auto binom = [](long n, long k) -> long {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  if (m == 0) return 1;
  if (m == 1) return d;
  return binom(d + m - 1, d - 1) - binom(d + m - 3, d - 1);
}

namespace {

void monomials_of_degree(int d, int m, std::vector<Polynomial::Exponents>& out) {
  out.clear();
  Polynomial::Exponents e(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int axis, int rem) {
    if (axis == d - 1) {
      e[static_cast<std::size_t>(axis)] = rem;
      out.push_back(e);
      return;
    }
    for (int k = rem; k >= 0; --k) {
      e[static_cast<std::size_t>(axis)] = k;
      rec(axis + 1, rem - k);
    }
  };
  rec(0, m);
}

// Exact rational kernel of an integer matrix (rows x cols), returned as
// integer-scaled basis vectors.
std::vector<std::vector<long>> integer_kernel(std::vector<std::vector<mpq_class>> A, int cols) {
  int rows = static_cast<int>(A.size());
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (A[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[static_cast<std::size_t>(piv)], A[static_cast<std::size_t>(r)]);
    mpq_class inv = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int j = c; j < cols; ++j) A[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      mpq_class f = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j < cols; ++j)
        A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * A[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : pivot_col_of_row) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<std::vector<long>> kernel;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[static_cast<std::size_t>(fc)]) continue;
    std::vector<mpq_class> v(static_cast<std::size_t>(cols), 0);
    v[static_cast<std::size_t>(fc)] = 1;
    for (int i = 0; i < static_cast<int>(pivot_col_of_row.size()); ++i)
      v[static_cast<std::size_t>(pivot_col_of_row[static_cast<std::size_t>(i)])] =
          -A[static_cast<std::size_t>(i)][static_cast<std::size_t>(fc)];
    // clear denominators
    mpz_class lcm = 1;
    for (const auto& q : v) {
      mpz_class den = q.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    std::vector<long> iv(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) {
      mpq_class q = v[static_cast<std::size_t>(j)] * lcm;
      iv[static_cast<std::size_t>(j)] = static_cast<long>(q.get_num().get_si());
    }
    kernel.push_back(std::move(iv));
  }
  return kernel;
}

}  // namespace

std::vector<HarmonicPolynomial> harmonic_polynomials(int d, int max_degree) {
  if (max_degree > 6) throw std::invalid_argument("harmonic_polynomials: max_degree <= 6");
  std::vector<HarmonicPolynomial> out;
  for (int m = 0; m <= max_degree; ++m) {
    std::vector<Polynomial::Exponents> mono;
    monomials_of_degree(d, m, mono);
    std::vector<Polynomial::Exponents> target;
    monomials_of_degree(d, std::max(0, m - 2), target);

    std::vector<std::vector<long>> basis_vectors;
    if (m < 2) {
      for (std::size_t i = 0; i < mono.size(); ++i) {
        std::vector<long> v(mono.size(), 0);
        v[i] = 1;
        basis_vectors.push_back(std::move(v));
      }
    } else {
      std::map<Polynomial::Exponents, int> target_index;
      for (std::size_t i = 0; i < target.size(); ++i) target_index[target[i]] = static_cast<int>(i);
      std::vector<std::vector<mpq_class>> A(target.size(),
                                            std::vector<mpq_class>(mono.size(), 0));
      for (std::size_t c = 0; c < mono.size(); ++c) {
        for (int a = 0; a < d; ++a) {
          int k = mono[c][static_cast<std::size_t>(a)];
          if (k < 2) continue;
          Polynomial::Exponents e = mono[c];
          e[static_cast<std::size_t>(a)] = k - 2;
          A[static_cast<std::size_t>(target_index[e])][c] += k * (k - 1);
        }
      }
      basis_vectors = integer_kernel(std::move(A), static_cast<int>(mono.size()));
    }

    if (static_cast<long>(basis_vectors.size()) != harmonic_dimension(d, m))
      throw std::runtime_error("harmonic_polynomials: kernel dimension mismatch");

    for (const auto& v : basis_vectors) {
      HarmonicPolynomial hp;
      hp.degree = m;
      hp.p = Polynomial(d);
      for (std::size_t i = 0; i < mono.size(); ++i)
        if (v[i] != 0) hp.p.add_term(mono[i], static_cast<double>(v[i]));
      for (int a = 0; a < d; ++a) hp.grad.push_back(hp.p.derivative(a));
      out.push_back(std::move(hp));
    }
  }
  return out;
}

}  // namespace qlip
