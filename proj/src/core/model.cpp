#include "offo/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace offo {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Zero: return "none";
    case ModelKind::BB: return "bb";
    case ModelKind::LBFGS: return "lbfgs3";
    case ModelKind::Exact: return "exact";
  }
  return "unknown";
}

ModelKind model_kind_from_tag(const std::string& tag) {
  if (tag == "none" || tag == "zero") return ModelKind::Zero;
  if (tag == "bb") return ModelKind::BB;
  if (tag == "lbfgs3" || tag == "lbfgs") return ModelKind::LBFGS;
  if (tag == "exact") return ModelKind::Exact;
  throw Error(ErrorCode::InvalidParameter, "unknown model '" + tag + "'");
}

double model_value(const Vector& g, const Vector& s, const Vector& Bs) {
  return g.dot(s) + 0.5 * s.dot(Bs);
}

HessianModel::HessianModel(ModelKind kind, int n, double kappa_B, int pairs)
    : kind_(kind), n_(n), kappa_B_(kappa_B), max_pairs_(pairs) {
  require(n >= 1, ErrorCode::InvalidParameter, "model: n must be >= 1");
  require(kappa_B >= 1.0 && std::isfinite(kappa_B), ErrorCode::InvalidParameter,
          "model: kappa_B must be finite and >= 1");
  require(pairs >= 1, ErrorCode::InvalidParameter,
          "model: pair count must be >= 1");
  if (kind == ModelKind::Exact) H_ = Matrix::Zero(n, n);
}

void HessianModel::fix_base(double sigma) {
  require(std::isfinite(sigma), ErrorCode::NonFiniteInput,
          "model: non-finite base");
  fixed_base_ = sigma;
  sigma_ = sigma;
  rebuild();
}

void HessianModel::update(const Vector& s, const Vector& y) {
  require(s.size() == n_ && y.size() == n_, ErrorCode::DimensionMismatch,
          "model update: pair length differs from n");
  require(s.allFinite() && y.allFinite(), ErrorCode::NonFiniteInput,
          "model update: non-finite secant pair");
  if (kind_ == ModelKind::Zero || kind_ == ModelKind::Exact) return;
  const double ss = s.squaredNorm();
  const double ys = y.dot(s);
  if (!(ss > 0.0) || ys < kCurvatureSafeguard * ss) return;
  if (kind_ == ModelKind::BB) {
    sigma_ = ss / ys;
  } else {
    if (!fixed_base_) sigma_ = ss / ys;
    pairs_.push_back(Pair{s, y, Vector(), ys, 0.0});
    if (pairs_.size() > max_pairs_) pairs_.pop_front();
  }
  rebuild();
}

void HessianModel::set_matrix(const Matrix& H) {
  require(H.rows() == n_ && H.cols() == n_, ErrorCode::DimensionMismatch,
          "model: Hessian shape differs from n");
  require(H.allFinite(), ErrorCode::NonFiniteInput, "model: non-finite Hessian");
  H_ = 0.5 * (H + H.transpose());
  rebuild();
}

Vector HessianModel::apply_uncapped(const Vector& v, std::size_t upto) const {
  switch (kind_) {
    case ModelKind::Zero: return Vector::Zero(n_);
    case ModelKind::BB: return sigma_ * v;
    case ModelKind::Exact: return H_ * v;
    case ModelKind::LBFGS: break;
  }
  if (pairs_.empty() && !fixed_base_) return Vector::Zero(n_);
  Vector out = sigma_ * v;
  for (std::size_t j = 0; j < upto; ++j) {
    const Pair& p = pairs_[j];
    out.noalias() -= (p.a.dot(v) / p.sa) * p.a;
    out.noalias() += (p.y.dot(v) / p.ys) * p.y;
  }
  return out;
}

void HessianModel::rebuild() {
  scale_ = 1.0;
  if (kind_ == ModelKind::LBFGS) {
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
      pairs_[j].a = apply_uncapped(pairs_[j].s, j);
      pairs_[j].sa = pairs_[j].s.dot(pairs_[j].a);
    }
  }
  enforce_cap();
}

void HessianModel::enforce_cap() {
  double nrm = 0.0;
  switch (kind_) {
    case ModelKind::Zero: break;
    case ModelKind::BB: nrm = std::abs(sigma_); break;
    case ModelKind::Exact:
    case ModelKind::LBFGS: {
      Matrix B = kind_ == ModelKind::Exact ? H_ : Matrix(n_, n_);
      if (kind_ == ModelKind::LBFGS) {
        for (int i = 0; i < n_; ++i) {
          B.col(i) = apply_uncapped(Vector::Unit(n_, i), pairs_.size());
        }
        B = 0.5 * (B + B.transpose());
      }
      Eigen::SelfAdjointEigenSolver<Matrix> eig(B, Eigen::EigenvaluesOnly);
      nrm = eig.eigenvalues().cwiseAbs().maxCoeff();
      break;
    }
  }
  if (nrm > kappa_B_) {
    scale_ = kappa_B_ / nrm;
    norm_ = kappa_B_;
  } else {
    norm_ = nrm;
  }
}

Vector HessianModel::apply(const Vector& v) const {
  require(v.size() == n_, ErrorCode::DimensionMismatch,
          "apply_model: vector length differs from n");
  Vector out = apply_uncapped(v, pairs_.size());
  if (scale_ != 1.0) out *= scale_;
  return out;
}

Matrix HessianModel::dense() const {
  Matrix B(n_, n_);
  for (int i = 0; i < n_; ++i) B.col(i) = apply(Vector::Unit(n_, i));
  return B;
}

}  // namespace offo
