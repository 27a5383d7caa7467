// Built-in unconstrained test problems. Definitions follow the usual
// More-Garbow-Hillstrom / CUTEst statements at the dimensions of the
// benchmark table; sum-of-squares problems are written as residual vectors
// with analytic Jacobians, f = sum r_i^2.

#include "offo/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace offo {
namespace {

using ResidualFn = std::function<void(const Vector& x, Vector& r, Matrix* J)>;

Problem least_squares(std::string name, Vector x0, std::optional<double> f_ref,
                      RefProvenance prov, int m, ResidualFn residuals) {
  Problem p;
  p.name = std::move(name);
  p.x0 = std::move(x0);
  p.f_ref = f_ref;
  p.provenance = prov;
  const int n = p.n();
  p.value = [residuals, m](const Vector& x) {
    Vector r(m);
    residuals(x, r, nullptr);
    return r.squaredNorm();
  };
  p.gradient = [residuals, m, n](const Vector& x) -> Vector {
    Vector r(m);
    Matrix J = Matrix::Zero(m, n);
    residuals(x, r, &J);
    return 2.0 * J.transpose() * r;
  };
  return p;
}

Problem smooth(std::string name, Vector x0, std::optional<double> f_ref,
               RefProvenance prov, std::function<double(const Vector&)> f,
               std::function<Vector(const Vector&)> g,
               std::function<Matrix(const Vector&)> h = {}) {
  Problem p;
  p.name = std::move(name);
  p.x0 = std::move(x0);
  p.f_ref = f_ref;
  p.provenance = prov;
  p.value = std::move(f);
  p.gradient = std::move(g);
  p.hessian = std::move(h);
  return p;
}

Vector filled(int n, double v) { return Vector::Constant(n, v); }

Vector from(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v[i++] = value;
  return v;
}

constexpr auto kLit = RefProvenance::Literature;
constexpr auto kRun = RefProvenance::ReferenceRun;

// ---------------------------------------------------------------- residual --

Problem argauss() {
  static constexpr std::array<double, 15> y = {
      0.0009, 0.0044, 0.0175, 0.0540, 0.1295, 0.2420, 0.3521, 0.3989,
      0.3521, 0.2420, 0.1295, 0.0540, 0.0175, 0.0044, 0.0009};
  return least_squares(
      "argauss", from({0.4, 1.0, 0.0}), 1.12793276961912e-08, kLit, 15,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 15; ++i) {
          const double t = (7.0 - i) / 2.0;  // (8 - (i+1)) / 2
          const double d = t - x[2];
          const double e = std::exp(-0.5 * x[1] * d * d);
          r[i] = x[0] * e - y[i];
          if (J) {
            (*J)(i, 0) = e;
            (*J)(i, 1) = -0.5 * x[0] * e * d * d;
            (*J)(i, 2) = x[0] * e * x[1] * d;
          }
        }
      });
}

Problem arglina() {
  static constexpr int n = 10, m = 20;
  return least_squares(
      "arglina", filled(n, 1.0), 10.0, kLit, m,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double s = x.sum();
        for (int i = 0; i < m; ++i) {
          r[i] = -2.0 * s / m - 1.0 + (i < n ? x[i] : 0.0);
          if (J) {
            J->row(i).setConstant(-2.0 / m);
            if (i < n) (*J)(i, i) += 1.0;
          }
        }
      });
}

Problem bard() {
  static constexpr std::array<double, 15> y = {0.14, 0.18, 0.22, 0.25, 0.29,
                                              0.32, 0.35, 0.39, 0.37, 0.58,
                                              0.73, 0.96, 1.34, 2.10, 4.39};
  return least_squares(
      "bard", from({1.0, 1.0, 1.0}), 8.21487730657897e-03, kLit, 15,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 15; ++i) {
          const double u = i + 1.0;
          const double v = 15.0 - i;
          const double w = std::min(u, v);
          const double den = v * x[1] + w * x[2];
          r[i] = y[i] - (x[0] + u / den);
          if (J) {
            (*J)(i, 0) = -1.0;
            (*J)(i, 1) = u * v / (den * den);
            (*J)(i, 2) = u * w / (den * den);
          }
        }
      });
}

Problem beale() {
  static constexpr std::array<double, 3> y = {1.5, 2.25, 2.625};
  return least_squares(
      "beale", from({1.0, 1.0}), 0.0, kLit, 3,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 3; ++i) {
          const int p = i + 1;
          const double xp = std::pow(x[1], p);
          r[i] = y[i] - x[0] * (1.0 - xp);
          if (J) {
            (*J)(i, 0) = -(1.0 - xp);
            (*J)(i, 1) = x[0] * p * std::pow(x[1], p - 1);
          }
        }
      });
}

Problem box3() {
  return least_squares(
      "box3", from({0.0, 10.0, 20.0}), 0.0, kLit, 10,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 10; ++i) {
          const double t = 0.1 * (i + 1);
          const double e1 = std::exp(-t * x[0]);
          const double e2 = std::exp(-t * x[1]);
          const double c = std::exp(-t) - std::exp(-10.0 * t);
          r[i] = e1 - e2 - x[2] * c;
          if (J) {
            (*J)(i, 0) = -t * e1;
            (*J)(i, 1) = t * e2;
            (*J)(i, 2) = -c;
          }
        }
      });
}

Problem brownbs() {
  return least_squares("brownbs", from({1.0, 1.0}), 0.0, kLit, 3,
                       [](const Vector& x, Vector& r, Matrix* J) {
                         r[0] = x[0] - 1e6;
                         r[1] = x[1] - 2e-6;
                         r[2] = x[0] * x[1] - 2.0;
                         if (J) {
                           *J << 1.0, 0.0, 0.0, 1.0, x[1], x[0];
                         }
                       });
}

Problem brownden() {
  return least_squares(
      "brownden", from({25.0, 5.0, -5.0, -1.0}), 85822.2016263563, kLit, 20,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 20; ++i) {
          const double t = (i + 1) / 5.0;
          const double a = x[0] + t * x[1] - std::exp(t);
          const double b = x[2] + x[3] * std::sin(t) - std::cos(t);
          r[i] = a * a + b * b;
          if (J) {
            (*J)(i, 0) = 2.0 * a;
            (*J)(i, 1) = 2.0 * a * t;
            (*J)(i, 2) = 2.0 * b;
            (*J)(i, 3) = 2.0 * b * std::sin(t);
          }
        }
      });
}

Problem brownal() {
  static constexpr int n = 10;
  return least_squares(
      "brownal", filled(n, 0.5), 0.0, kLit, n,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double s = x.sum();
        for (int i = 0; i < n - 1; ++i) {
          r[i] = x[i] + s - (n + 1.0);
          if (J) {
            J->row(i).setOnes();
            (*J)(i, i) += 1.0;
          }
        }
        r[n - 1] = x.prod() - 1.0;
        if (J) {
          for (int j = 0; j < n; ++j) {
            double prod = 1.0;
            for (int k = 0; k < n; ++k) {
              if (k != j) prod *= x[k];
            }
            (*J)(n - 1, j) = prod;
          }
        }
      });
}

Problem broyden3d() {
  static constexpr int n = 10;
  return least_squares(
      "broyden3d", filled(n, -1.0), 0.0, kLit, n,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < n; ++i) {
          const double left = i > 0 ? x[i - 1] : 0.0;
          const double right = i < n - 1 ? x[i + 1] : 0.0;
          r[i] = (3.0 - 2.0 * x[i]) * x[i] - left - 2.0 * right + 1.0;
          if (J) {
            (*J)(i, i) = 3.0 - 4.0 * x[i];
            if (i > 0) (*J)(i, i - 1) = -1.0;
            if (i < n - 1) (*J)(i, i + 1) = -2.0;
          }
        }
      });
}

Problem broydenbd() {
  static constexpr int n = 10;
  return least_squares(
      "broydenbd", filled(n, -1.0), 0.0, kLit, n,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < n; ++i) {
          double v = x[i] * (2.0 + 5.0 * x[i] * x[i]) + 1.0;
          if (J) (*J)(i, i) = 2.0 + 15.0 * x[i] * x[i];
          for (int j = std::max(0, i - 5); j <= std::min(n - 1, i + 1); ++j) {
            if (j == i) continue;
            v -= x[j] * (1.0 + x[j]);
            if (J) (*J)(i, j) = -(1.0 + 2.0 * x[j]);
          }
          r[i] = v;
        }
      });
}

Problem chebyqad() {
  static constexpr int n = 10;
  Vector x0(n);
  for (int j = 0; j < n; ++j) x0[j] = (j + 1.0) / (n + 1.0);
  return least_squares(
      "chebyqad", x0, 6.50395174942132e-03, kLit, n,
      [](const Vector& x, Vector& r, Matrix* J) {
        // Shifted Chebyshev polynomials T_i(2x - 1) and their derivatives
        // with respect to x, by the three-term recurrence.
        Matrix T(n + 1, n), dT(n + 1, n);
        for (int j = 0; j < n; ++j) {
          const double y = 2.0 * x[j] - 1.0;
          T(0, j) = 1.0;
          T(1, j) = y;
          dT(0, j) = 0.0;
          dT(1, j) = 2.0;
          for (int i = 1; i < n; ++i) {
            T(i + 1, j) = 2.0 * y * T(i, j) - T(i - 1, j);
            dT(i + 1, j) = 4.0 * T(i, j) + 2.0 * y * dT(i, j) - dT(i - 1, j);
          }
        }
        for (int i = 1; i <= n; ++i) {
          const double integral = (i % 2 == 0) ? -1.0 / (i * i - 1.0) : 0.0;
          r[i - 1] = T.row(i).sum() / n - integral;
          if (J) J->row(i - 1) = dT.row(i) / n;
        }
      });
}

Problem engval2() {
  return least_squares(
      "engval2", from({1.0, 2.0, 0.0}), 0.0, kLit, 5,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double a = 5.0 * x[2] - x[0] + 1.0;
        r[0] = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - 1.0;
        r[1] = x[0] * x[0] + x[1] * x[1] + (x[2] - 2.0) * (x[2] - 2.0) - 1.0;
        r[2] = x[0] + x[1] + x[2] - 1.0;
        r[3] = x[0] + x[1] - x[2] + 1.0;
        r[4] = x[0] * x[0] * x[0] + 3.0 * x[1] * x[1] + a * a - 36.0;
        if (J) {
          *J << 2 * x[0], 2 * x[1], 2 * x[2],        //
              2 * x[0], 2 * x[1], 2 * (x[2] - 2.0),  //
              1, 1, 1,                               //
              1, 1, -1,                              //
              3 * x[0] * x[0] - 2 * a, 6 * x[1], 10 * a;
        }
      });
}

Problem freuroth() {
  static constexpr int n = 4;
  static constexpr int m = 2 * (n - 1);
  Vector x0 = Vector::Zero(n);
  x0[0] = 0.5;
  x0[1] = -2.0;
  return least_squares(
      "freuroth", x0, 284.044708637453, kRun, m,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < n - 1; ++i) {
          const double u = x[i + 1];
          r[2 * i] = x[i] - 13.0 + ((5.0 - u) * u - 2.0) * u;
          r[2 * i + 1] = x[i] - 29.0 + ((u + 1.0) * u - 14.0) * u;
          if (J) {
            (*J)(2 * i, i) = 1.0;
            (*J)(2 * i, i + 1) = 10.0 * u - 3.0 * u * u - 2.0;
            (*J)(2 * i + 1, i) = 1.0;
            (*J)(2 * i + 1, i + 1) = 3.0 * u * u + 2.0 * u - 14.0;
          }
        }
      });
}

Problem gottfr() {
  return least_squares(
      "gottfr", from({0.5, 0.5}), 0.0, kLit, 2,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double a = x[0] + 3.0 * x[1];
        const double b = 2.0 * x[0] - x[1];
        r[0] = x[0] - 0.1136 * a * (1.0 - x[0]);
        r[1] = x[1] + 7.5 * b * (1.0 - x[1]);
        if (J) {
          (*J)(0, 0) = 1.0 - 0.1136 * ((1.0 - x[0]) - a);
          (*J)(0, 1) = -0.1136 * 3.0 * (1.0 - x[0]);
          (*J)(1, 0) = 7.5 * 2.0 * (1.0 - x[1]);
          (*J)(1, 1) = 1.0 + 7.5 * (-(1.0 - x[1]) - b);
        }
      });
}

Problem helix() {
  return least_squares(
      "helix", from({-1.0, 0.0, 0.0}), 0.0, kLit, 3,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double twopi = 2.0 * std::numbers::pi;
        double theta;
        if (x[0] > 0.0) {
          theta = std::atan(x[1] / x[0]) / twopi;
        } else if (x[0] < 0.0) {
          theta = std::atan(x[1] / x[0]) / twopi + 0.5;
        } else {
          theta = x[1] >= 0.0 ? 0.25 : 0.75;
        }
        const double rad2 = x[0] * x[0] + x[1] * x[1];
        const double rad = std::sqrt(rad2);
        r[0] = 10.0 * (x[2] - 10.0 * theta);
        r[1] = 10.0 * (rad - 1.0);
        r[2] = x[2];
        if (J) {
          const double dth0 = rad2 > 0.0 ? -x[1] / (twopi * rad2) : 0.0;
          const double dth1 = rad2 > 0.0 ? x[0] / (twopi * rad2) : 0.0;
          *J << -100.0 * dth0, -100.0 * dth1, 10.0,                     //
              rad > 0.0 ? 10.0 * x[0] / rad : 0.0,                      //
              rad > 0.0 ? 10.0 * x[1] / rad : 0.0, 0.0,                 //
              0.0, 0.0, 1.0;
        }
      });
}

Problem jensmp() {
  return least_squares(
      "jensmp", from({0.3, 0.4}), 124.362182355615, kLit, 10,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 10; ++i) {
          const double k = i + 1.0;
          const double e1 = std::exp(k * x[0]);
          const double e2 = std::exp(k * x[1]);
          r[i] = 2.0 + 2.0 * k - (e1 + e2);
          if (J) {
            (*J)(i, 0) = -k * e1;
            (*J)(i, 1) = -k * e2;
          }
        }
      });
}

Problem kowosb() {
  static constexpr std::array<double, 11> y = {
      0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
      0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  static constexpr std::array<double, 11> u = {
      4.0, 2.0, 1.0, 0.5, 0.25, 0.167, 0.125, 0.1, 0.0833, 0.0714, 0.0625};
  return least_squares(
      "kowosb", from({0.25, 0.39, 0.415, 0.39}), 3.07505603849238e-04, kLit,
      11, [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 11; ++i) {
          const double num = u[i] * u[i] + u[i] * x[1];
          const double den = u[i] * u[i] + u[i] * x[2] + x[3];
          r[i] = y[i] - x[0] * num / den;
          if (J) {
            (*J)(i, 0) = -num / den;
            (*J)(i, 1) = -x[0] * u[i] / den;
            (*J)(i, 2) = x[0] * num * u[i] / (den * den);
            (*J)(i, 3) = x[0] * num / (den * den);
          }
        }
      });
}

Problem osbornea() {
  static constexpr std::array<double, 33> y = {
      0.844, 0.908, 0.932, 0.936, 0.925, 0.908, 0.881, 0.850, 0.818,
      0.784, 0.751, 0.718, 0.685, 0.658, 0.628, 0.603, 0.580, 0.558,
      0.538, 0.522, 0.506, 0.490, 0.478, 0.467, 0.457, 0.448, 0.438,
      0.431, 0.424, 0.420, 0.414, 0.411, 0.406};
  return least_squares(
      "osbornea", from({0.5, 1.5, -1.0, 0.01, 0.02}), 5.46489469748190e-05,
      kLit, 33, [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 33; ++i) {
          const double t = 10.0 * i;
          const double e4 = std::exp(-t * x[3]);
          const double e5 = std::exp(-t * x[4]);
          r[i] = y[i] - (x[0] + x[1] * e4 + x[2] * e5);
          if (J) {
            (*J)(i, 0) = -1.0;
            (*J)(i, 1) = -e4;
            (*J)(i, 2) = -e5;
            (*J)(i, 3) = x[1] * t * e4;
            (*J)(i, 4) = x[2] * t * e5;
          }
        }
      });
}

Problem osborneb() {
  static constexpr std::array<double, 65> y = {
      1.366, 1.191, 1.112, 1.013, 0.991, 0.885, 0.831, 0.847, 0.786, 0.725,
      0.746, 0.679, 0.608, 0.655, 0.616, 0.606, 0.602, 0.626, 0.651, 0.724,
      0.649, 0.649, 0.694, 0.644, 0.624, 0.661, 0.612, 0.558, 0.533, 0.495,
      0.500, 0.423, 0.395, 0.375, 0.372, 0.391, 0.396, 0.405, 0.428, 0.429,
      0.523, 0.562, 0.607, 0.653, 0.672, 0.708, 0.633, 0.668, 0.645, 0.632,
      0.591, 0.559, 0.597, 0.625, 0.739, 0.710, 0.729, 0.720, 0.636, 0.581,
      0.428, 0.292, 0.162, 0.098, 0.054};
  return least_squares(
      "osborneb",
      from({1.3, 0.65, 0.65, 0.7, 0.6, 3.0, 5.0, 7.0, 2.0, 4.5, 5.5}),
      4.01377362935478e-02, kLit, 65,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 65; ++i) {
          const double t = i / 10.0;
          const double e1 = std::exp(-t * x[4]);
          double model = x[0] * e1;
          if (J) {
            (*J)(i, 0) = -e1;
            (*J)(i, 4) = x[0] * t * e1;
          }
          for (int k = 0; k < 3; ++k) {
            const double d = t - x[8 + k];
            const double e = std::exp(-d * d * x[5 + k]);
            model += x[1 + k] * e;
            if (J) {
              (*J)(i, 1 + k) = -e;
              (*J)(i, 5 + k) = x[1 + k] * d * d * e;
              (*J)(i, 8 + k) = -x[1 + k] * e * 2.0 * d * x[5 + k];
            }
          }
          r[i] = y[i] - model;
        }
      });
}

Problem penalty1() {
  static constexpr int n = 10;
  Vector x0(n);
  for (int j = 0; j < n; ++j) x0[j] = j + 1.0;
  return least_squares(
      "penalty1", x0, 7.08765146709037e-05, kLit, n + 1,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double sa = std::sqrt(1e-5);
        for (int i = 0; i < n; ++i) {
          r[i] = sa * (x[i] - 1.0);
          if (J) (*J)(i, i) = sa;
        }
        r[n] = x.squaredNorm() - 0.25;
        if (J) J->row(n) = 2.0 * x.transpose();
      });
}

Problem penalty2() {
  static constexpr int n = 10;
  return least_squares(
      "penalty2", filled(n, 0.5), 2.93660926562982e-04, kLit, 2 * n,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double sa = std::sqrt(1e-5);
        const double em = std::exp(-0.1);
        r[0] = x[0] - 0.2;
        if (J) (*J)(0, 0) = 1.0;
        for (int i = 1; i < n; ++i) {
          const double yi = std::exp((i + 1) / 10.0) + std::exp(i / 10.0);
          const double a = std::exp(x[i] / 10.0);
          const double b = std::exp(x[i - 1] / 10.0);
          r[i] = sa * (a + b - yi);
          if (J) {
            (*J)(i, i) = sa * a / 10.0;
            (*J)(i, i - 1) = sa * b / 10.0;
          }
        }
        for (int i = n; i < 2 * n - 1; ++i) {
          const int j = i - n + 1;
          const double a = std::exp(x[j] / 10.0);
          r[i] = sa * (a - em);
          if (J) (*J)(i, j) = sa * a / 10.0;
        }
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
          s += (n - j) * x[j] * x[j];
          if (J) (*J)(2 * n - 1, j) = 2.0 * (n - j) * x[j];
        }
        r[2 * n - 1] = s - 1.0;
      });
}

Problem powellbs() {
  return least_squares("powellbs", from({0.0, 1.0}), 0.0, kLit, 2,
                       [](const Vector& x, Vector& r, Matrix* J) {
                         const double e0 = std::exp(-x[0]);
                         const double e1 = std::exp(-x[1]);
                         r[0] = 1e4 * x[0] * x[1] - 1.0;
                         r[1] = e0 + e1 - 1.0001;
                         if (J) *J << 1e4 * x[1], 1e4 * x[0], -e0, -e1;
                       });
}

Problem powellsg() {
  static constexpr int n = 12;
  Vector x0(n);
  for (int b = 0; b < n / 4; ++b) x0.segment<4>(4 * b) << 3.0, -1.0, 0.0, 1.0;
  return least_squares(
      "powellsg", x0, 0.0, kLit, n,
      [](const Vector& x, Vector& r, Matrix* J) {
        const double s5 = std::sqrt(5.0), s10 = std::sqrt(10.0);
        for (int b = 0; b < n / 4; ++b) {
          const int o = 4 * b;
          const double a = x[o + 1] - 2.0 * x[o + 2];
          const double c = x[o] - x[o + 3];
          r[o] = x[o] + 10.0 * x[o + 1];
          r[o + 1] = s5 * (x[o + 2] - x[o + 3]);
          r[o + 2] = a * a;
          r[o + 3] = s10 * c * c;
          if (J) {
            (*J)(o, o) = 1.0;
            (*J)(o, o + 1) = 10.0;
            (*J)(o + 1, o + 2) = s5;
            (*J)(o + 1, o + 3) = -s5;
            (*J)(o + 2, o + 1) = 2.0 * a;
            (*J)(o + 2, o + 2) = -4.0 * a;
            (*J)(o + 3, o) = 2.0 * s10 * c;
            (*J)(o + 3, o + 3) = -2.0 * s10 * c;
          }
        }
      });
}

Problem vardim() {
  static constexpr int n = 10;
  Vector x0(n);
  for (int j = 0; j < n; ++j) x0[j] = 1.0 - (j + 1.0) / n;
  return least_squares(
      "vardim", x0, 0.0, kLit, n + 2,
      [](const Vector& x, Vector& r, Matrix* J) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
          r[j] = x[j] - 1.0;
          s += (j + 1.0) * (x[j] - 1.0);
          if (J) (*J)(j, j) = 1.0;
        }
        r[n] = s;
        r[n + 1] = s * s;
        if (J) {
          for (int j = 0; j < n; ++j) {
            (*J)(n, j) = j + 1.0;
            (*J)(n + 1, j) = 2.0 * s * (j + 1.0);
          }
        }
      });
}

Problem watson() {
  static constexpr int n = 12;
  return least_squares(
      "watson", Vector::Zero(n), 4.72238011472222e-10, kLit, 31,
      [](const Vector& x, Vector& r, Matrix* J) {
        for (int i = 0; i < 29; ++i) {
          const double t = (i + 1) / 29.0;
          double s1 = 0.0, s2 = 0.0, tp = 1.0;
          for (int j = 0; j < n; ++j) {
            s2 += x[j] * tp;
            tp *= t;
          }
          tp = 1.0;
          for (int j = 1; j < n; ++j) {
            s1 += j * x[j] * tp;
            tp *= t;
          }
          r[i] = s1 - s2 * s2 - 1.0;
          if (J) {
            double tj = 1.0;  // t^(j)
            for (int j = 0; j < n; ++j) {
              const double d1 = j > 0 ? j * tj / t : 0.0;
              (*J)(i, j) = d1 - 2.0 * s2 * tj;
              tj *= t;
            }
          }
        }
        r[29] = x[0];
        r[30] = x[1] - x[0] * x[0] - 1.0;
        if (J) {
          (*J)(29, 0) = 1.0;
          (*J)(30, 0) = -2.0 * x[0];
          (*J)(30, 1) = 1.0;
        }
      });
}

// ----------------------------------------------------------------- general --

Problem rosenbr() {
  static constexpr int n = 10;
  Vector x0(n);
  for (int i = 0; i < n; ++i) x0[i] = (i % 2 == 0) ? -1.2 : 1.0;
  return smooth(
      "rosenbr", x0, 0.0, kLit,
      [](const Vector& x) {
        double f = 0.0;
        for (int i = 0; i < n - 1; ++i) {
          const double a = x[i + 1] - x[i] * x[i];
          f += 100.0 * a * a + (1.0 - x[i]) * (1.0 - x[i]);
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = Vector::Zero(n);
        for (int i = 0; i < n - 1; ++i) {
          const double a = x[i + 1] - x[i] * x[i];
          g[i] += -400.0 * a * x[i] - 2.0 * (1.0 - x[i]);
          g[i + 1] += 200.0 * a;
        }
        return g;
      },
      [](const Vector& x) -> Matrix {
        Matrix H = Matrix::Zero(n, n);
        for (int i = 0; i < n - 1; ++i) {
          H(i, i) += 1200.0 * x[i] * x[i] - 400.0 * x[i + 1] + 2.0;
          H(i, i + 1) -= 400.0 * x[i];
          H(i + 1, i) -= 400.0 * x[i];
          H(i + 1, i + 1) += 200.0;
        }
        return H;
      });
}

Problem woods() {
  static constexpr int n = 12;
  Vector x0(n);
  for (int b = 0; b < n / 4; ++b) x0.segment<4>(4 * b) << -3.0, -1.0, -3.0, -1.0;
  return smooth(
      "woods", x0, 0.0, kLit,
      [](const Vector& x) {
        double f = 0.0;
        for (int b = 0; b < n / 4; ++b) {
          const double x1 = x[4 * b], x2 = x[4 * b + 1], x3 = x[4 * b + 2],
                       x4 = x[4 * b + 3];
          f += 100.0 * std::pow(x2 - x1 * x1, 2) + std::pow(1.0 - x1, 2) +
               90.0 * std::pow(x4 - x3 * x3, 2) + std::pow(1.0 - x3, 2) +
               10.1 * (std::pow(x2 - 1.0, 2) + std::pow(x4 - 1.0, 2)) +
               19.8 * (x2 - 1.0) * (x4 - 1.0);
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g(n);
        for (int b = 0; b < n / 4; ++b) {
          const double x1 = x[4 * b], x2 = x[4 * b + 1], x3 = x[4 * b + 2],
                       x4 = x[4 * b + 3];
          g[4 * b] = -400.0 * x1 * (x2 - x1 * x1) - 2.0 * (1.0 - x1);
          g[4 * b + 1] = 200.0 * (x2 - x1 * x1) + 20.2 * (x2 - 1.0) +
                         19.8 * (x4 - 1.0);
          g[4 * b + 2] = -360.0 * x3 * (x4 - x3 * x3) - 2.0 * (1.0 - x3);
          g[4 * b + 3] = 180.0 * (x4 - x3 * x3) + 20.2 * (x4 - 1.0) +
                         19.8 * (x2 - 1.0);
        }
        return g;
      });
}

Problem tridia() {
  static constexpr int n = 10;
  return smooth(
      "tridia", filled(n, 1.0), 0.0, kLit,
      [](const Vector& x) {
        double f = (x[0] - 1.0) * (x[0] - 1.0);
        for (int i = 1; i < n; ++i) {
          const double a = 2.0 * x[i] - x[i - 1];
          f += (i + 1.0) * a * a;
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = Vector::Zero(n);
        g[0] = 2.0 * (x[0] - 1.0);
        for (int i = 1; i < n; ++i) {
          const double a = 2.0 * x[i] - x[i - 1];
          g[i] += 4.0 * (i + 1.0) * a;
          g[i - 1] -= 2.0 * (i + 1.0) * a;
        }
        return g;
      });
}

Problem cube() {
  return smooth(
      "cube", from({-1.2, 1.0}), 0.0, kLit,
      [](const Vector& x) {
        const double a = x[1] - x[0] * x[0] * x[0];
        return (x[0] - 1.0) * (x[0] - 1.0) + 100.0 * a * a;
      },
      [](const Vector& x) -> Vector {
        const double a = x[1] - x[0] * x[0] * x[0];
        return from({2.0 * (x[0] - 1.0) - 600.0 * a * x[0] * x[0], 200.0 * a});
      });
}

Problem engval1() {
  static constexpr int n = 10;
  return smooth(
      "engval1", filled(n, 2.0), 9.17746995718139, kRun,
      [](const Vector& x) {
        double f = 0.0;
        for (int i = 0; i < n - 1; ++i) {
          const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
          f += q * q - 4.0 * x[i] + 3.0;
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = Vector::Zero(n);
        for (int i = 0; i < n - 1; ++i) {
          const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
          g[i] += 4.0 * q * x[i] - 4.0;
          g[i + 1] += 4.0 * q * x[i + 1];
        }
        return g;
      });
}

Problem edensch() {
  static constexpr int n = 10;
  return smooth(
      "edensch", Vector::Zero(n), 63.2846001052634, kRun,
      [](const Vector& x) {
        double f = 16.0;
        for (int i = 0; i < n - 1; ++i) {
          const double a = x[i] - 2.0;
          const double b = x[i] * x[i + 1] - 2.0 * x[i + 1];
          const double c = x[i + 1] + 1.0;
          f += a * a * a * a + b * b + c * c;
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = Vector::Zero(n);
        for (int i = 0; i < n - 1; ++i) {
          const double a = x[i] - 2.0;
          const double b = x[i] * x[i + 1] - 2.0 * x[i + 1];
          const double c = x[i + 1] + 1.0;
          g[i] += 4.0 * a * a * a + 2.0 * b * x[i + 1];
          g[i + 1] += 2.0 * b * (x[i] - 2.0) + 2.0 * c;
        }
        return g;
      });
}

Problem dixmaana() {
  // Dixon-Maany with alpha = 1, beta = 0, gamma = delta = 0.125, all powers 0.
  static constexpr int n = 12, m = n / 3;
  return smooth(
      "dixmaana", filled(n, 2.0), 1.0, kLit,
      [](const Vector& x) {
        double f = 1.0 + x.squaredNorm();
        for (int i = 0; i < 2 * m; ++i) {
          f += 0.125 * x[i] * x[i] * std::pow(x[i + m], 4);
        }
        for (int i = 0; i < m; ++i) f += 0.125 * x[i] * x[i + 2 * m];
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = 2.0 * x;
        for (int i = 0; i < 2 * m; ++i) {
          g[i] += 0.25 * x[i] * std::pow(x[i + m], 4);
          g[i + m] += 0.5 * x[i] * x[i] * std::pow(x[i + m], 3);
        }
        for (int i = 0; i < m; ++i) {
          g[i] += 0.125 * x[i + 2 * m];
          g[i + 2 * m] += 0.125 * x[i];
        }
        return g;
      });
}

Problem zangwill2() {
  return smooth(
      "zangwill2", from({3.0, 8.0}), -18.2, kLit,
      [](const Vector& x) {
        return (16.0 * x[0] * x[0] + 16.0 * x[1] * x[1] - 8.0 * x[0] * x[1] -
                56.0 * x[0] - 256.0 * x[1] + 991.0) /
               15.0;
      },
      [](const Vector& x) -> Vector {
        return from({(32.0 * x[0] - 8.0 * x[1] - 56.0) / 15.0,
                     (32.0 * x[1] - 8.0 * x[0] - 256.0) / 15.0});
      },
      [](const Vector&) -> Matrix {
        Matrix H(2, 2);
        H << 32.0, -8.0, -8.0, 32.0;
        return H / 15.0;
      });
}

Problem dqartic() {
  static constexpr int n = 10;
  return smooth(
      "dqartic", filled(n, 2.0), 0.0, kLit,
      [](const Vector& x) {
        double f = 0.0;
        for (int i = 0; i < n; ++i) f += std::pow(x[i] - (i + 1.0), 4);
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g(n);
        for (int i = 0; i < n; ++i) g[i] = 4.0 * std::pow(x[i] - (i + 1.0), 3);
        return g;
      },
      [](const Vector& x) -> Matrix {
        Vector d(n);
        for (int i = 0; i < n; ++i) d[i] = 12.0 * std::pow(x[i] - (i + 1.0), 2);
        return d.asDiagonal();
      });
}

Problem nondquar() {
  static constexpr int n = 10;
  Vector x0(n);
  for (int i = 0; i < n; ++i) x0[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return smooth(
      "nondquar", x0, 0.0, kLit,
      [](const Vector& x) {
        double f = std::pow(x[0] - x[1], 2) + std::pow(x[n - 2] + x[n - 1], 2);
        for (int i = 0; i < n - 2; ++i) {
          f += std::pow(x[i] + x[i + 1] + x[n - 1], 4);
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = Vector::Zero(n);
        g[0] += 2.0 * (x[0] - x[1]);
        g[1] -= 2.0 * (x[0] - x[1]);
        g[n - 2] += 2.0 * (x[n - 2] + x[n - 1]);
        g[n - 1] += 2.0 * (x[n - 2] + x[n - 1]);
        for (int i = 0; i < n - 2; ++i) {
          const double d = 4.0 * std::pow(x[i] + x[i + 1] + x[n - 1], 3);
          g[i] += d;
          g[i + 1] += d;
          g[n - 1] += d;
        }
        return g;
      });
}

Problem sisser() {
  return smooth(
      "sisser", from({1.0, 0.1}), 0.0, kLit,
      [](const Vector& x) {
        const double a = x[0] * x[0], b = x[1] * x[1];
        return 3.0 * a * a - 2.0 * a * b + 3.0 * b * b;
      },
      [](const Vector& x) -> Vector {
        const double a = x[0] * x[0], b = x[1] * x[1];
        return from({12.0 * a * x[0] - 4.0 * x[0] * b,
                     12.0 * b * x[1] - 4.0 * a * x[1]});
      },
      [](const Vector& x) -> Matrix {
        const double a = x[0] * x[0], b = x[1] * x[1];
        Matrix H(2, 2);
        H << 36.0 * a - 4.0 * b, -8.0 * x[0] * x[1], -8.0 * x[0] * x[1],
            36.0 * b - 4.0 * a;
        return H;
      });
}

Problem booth() {
  return smooth(
      "booth", from({0.0, 0.0}), 0.0, kLit,
      [](const Vector& x) {
        return std::pow(x[0] + 2.0 * x[1] - 7.0, 2) +
               std::pow(2.0 * x[0] + x[1] - 5.0, 2);
      },
      [](const Vector& x) -> Vector {
        const double a = x[0] + 2.0 * x[1] - 7.0;
        const double b = 2.0 * x[0] + x[1] - 5.0;
        return from({2.0 * a + 4.0 * b, 4.0 * a + 2.0 * b});
      },
      [](const Vector&) -> Matrix {
        Matrix H(2, 2);
        H << 10.0, 8.0, 8.0, 10.0;
        return H;
      });
}

Problem arwhead() {
  static constexpr int n = 10;
  return smooth(
      "arwhead", filled(n, 1.0), 0.0, kLit,
      [](const Vector& x) {
        double f = 0.0;
        for (int i = 0; i < n - 1; ++i) {
          const double q = x[i] * x[i] + x[n - 1] * x[n - 1];
          f += q * q - 4.0 * x[i] + 3.0;
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = Vector::Zero(n);
        for (int i = 0; i < n - 1; ++i) {
          const double q = x[i] * x[i] + x[n - 1] * x[n - 1];
          g[i] += 4.0 * q * x[i] - 4.0;
          g[n - 1] += 4.0 * q * x[n - 1];
        }
        return g;
      });
}

Problem genhumps() {
  static constexpr int n = 5;
  Vector x0 = filled(n, 506.2);
  x0[0] = -506.0;
  return smooth(
      "genhumps", x0, 0.0, kLit,
      [](const Vector& x) {
        double f = 0.0;
        for (int i = 0; i < n - 1; ++i) {
          const double a = std::sin(2.0 * x[i]), b = std::sin(2.0 * x[i + 1]);
          f += a * a * b * b + 0.05 * (x[i] * x[i] + x[i + 1] * x[i + 1]);
        }
        return f;
      },
      [](const Vector& x) -> Vector {
        Vector g = Vector::Zero(n);
        for (int i = 0; i < n - 1; ++i) {
          const double a = std::sin(2.0 * x[i]), b = std::sin(2.0 * x[i + 1]);
          g[i] += 4.0 * a * std::cos(2.0 * x[i]) * b * b + 0.1 * x[i];
          g[i + 1] += 4.0 * b * std::cos(2.0 * x[i + 1]) * a * a + 0.1 * x[i + 1];
        }
        return g;
      });
}

Problem cliff() {
  return smooth(
      "cliff", from({0.0, -1.0}), 0.199786613879547, kLit,
      [](const Vector& x) {
        const double a = 0.01 * x[0] - 0.03;
        return a * a - x[0] + x[1] + std::exp(20.0 * (x[0] - x[1]));
      },
      [](const Vector& x) -> Vector {
        const double a = 0.01 * x[0] - 0.03;
        const double e = std::exp(20.0 * (x[0] - x[1]));
        return from({0.02 * a - 1.0 + 20.0 * e, 1.0 - 20.0 * e});
      });
}

Problem hilbert() {
  static constexpr int n = 10;
  Matrix H(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) H(i, j) = 1.0 / (i + j + 1.0);
  }
  return smooth(
      "hilbert", filled(n, 1.0), 0.0, kLit,
      [H](const Vector& x) { return 0.5 * x.dot(H * x); },
      [H](const Vector& x) -> Vector { return H * x; },
      [H](const Vector&) -> Matrix { return H; });
}

using Factory = Problem (*)();

const std::vector<std::pair<std::string, Factory>>& registry() {
  static const std::vector<std::pair<std::string, Factory>> table = {
      {"argauss", argauss},     {"arglina", arglina},
      {"arwhead", arwhead},     {"bard", bard},
      {"beale", beale},         {"booth", booth},
      {"box3", box3},           {"brownal", brownal},
      {"brownbs", brownbs},     {"brownden", brownden},
      {"broyden3d", broyden3d}, {"broydenbd", broydenbd},
      {"chebyqad", chebyqad},   {"cliff", cliff},
      {"cube", cube},           {"dixmaana", dixmaana},
      {"dqartic", dqartic},     {"edensch", edensch},
      {"engval1", engval1},     {"engval2", engval2},
      {"freuroth", freuroth},   {"genhumps", genhumps},
      {"gottfr", gottfr},       {"helix", helix},
      {"hilbert", hilbert},     {"jensmp", jensmp},
      {"kowosb", kowosb},       {"nondquar", nondquar},
      {"osbornea", osbornea},   {"osborneb", osborneb},
      {"penalty1", penalty1},   {"penalty2", penalty2},
      {"powellbs", powellbs},   {"powellsg", powellsg},
      {"rosenbr", rosenbr},     {"sisser", sisser},
      {"tridia", tridia},       {"vardim", vardim},
      {"watson", watson},       {"woods", woods},
      {"zangwill2", zangwill2},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

Problem load_problem(const std::string& name) {
  for (const auto& [key, factory] : registry()) {
    if (key == name) return factory();
  }
  throw Error(ErrorCode::UnknownProblem, "unknown problem '" + name + "'");
}

std::vector<Problem> load_suite(const std::vector<std::string>& names) {
  std::vector<Problem> out;
  if (names.empty()) {
    for (const auto& [name, factory] : registry()) out.push_back(factory());
    return out;
  }
  for (const auto& name : names) out.push_back(load_problem(name));
  return out;
}

}  // namespace offo
