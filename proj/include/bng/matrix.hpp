#pragma once
// Dense complex square matrices, sized for spectra up to a few hundred.
// Nothing clever: row-major storage, O(n^3) products, Frobenius norms.  The
// spec's UnitaryMatrix is a cmatrix whose unitarity defect passes the pinned
// tolerance; require_unitary() enforces that at API boundaries.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "bng/error.hpp"

namespace bng {

using cplx = std::complex<double>;

// Default tolerance for accepting a matrix as unitary: ||M M* - I||_F.
inline constexpr double unitarity_tol = 1e-10;

class cmatrix {
 public:
  cmatrix() = default;
  explicit cmatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx(0.0, 0.0)) {}

  static cmatrix identity(std::size_t dim) {
    cmatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  // Permutation matrix P with P e_{src} = e_{dst}, i.e. P[dst[s], s] = 1.
  static cmatrix permutation(const std::vector<std::size_t>& dst) {
    cmatrix m(dst.size());
    std::vector<bool> seen(dst.size(), false);
    for (std::size_t s = 0; s < dst.size(); ++s) {
      if (dst[s] >= dst.size() || seen[dst[s]])
        fail_precondition("permutation: image is not a bijection");
      seen[dst[s]] = true;
      m.at(dst[s], s) = 1.0;
    }
    return m;
  }

  std::size_t dim() const { return dim_; }
  cplx& at(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  cmatrix mul(const cmatrix& rhs) const {
    if (dim_ != rhs.dim_) fail_precondition("matrix product: dimension mismatch");
    cmatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        const cplx aik = at(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < dim_; ++j) out.at(i, j) += aik * rhs.at(k, j);
      }
    return out;
  }

  cmatrix adjoint() const {
    cmatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
  }

  double frobenius() const {
    double s = 0.0;
    for (const cplx& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  double frobenius_distance(const cmatrix& rhs) const {
    if (dim_ != rhs.dim_) fail_precondition("frobenius_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) s += std::norm(a_[k] - rhs.a_[k]);
    return std::sqrt(s);
  }

  // ||M M* - I||_F
  double unitarity_defect() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        cplx g(0.0, 0.0);
        for (std::size_t k = 0; k < dim_; ++k) g += at(i, k) * std::conj(at(j, k));
        if (i == j) g -= 1.0;
        s += std::norm(g);
      }
    return std::sqrt(s);
  }

  // Block direct sum: this (+) rhs.
  cmatrix direct_sum(const cmatrix& rhs) const {
    cmatrix out(dim_ + rhs.dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < rhs.dim_; ++i)
      for (std::size_t j = 0; j < rhs.dim_; ++j) out.at(dim_ + i, dim_ + j) = rhs.at(i, j);
    return out;
  }

  bool operator==(const cmatrix& rhs) const { return dim_ == rhs.dim_ && a_ == rhs.a_; }

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> a_;
};

inline void require_unitary(const cmatrix& m, double tol, const std::string& what) {
  const double defect = m.unitarity_defect();
  if (!(defect <= tol))
    fail_precondition(what + ": not unitary, ||MM*-I||_F = " + std::to_string(defect));
}

}  // namespace bng
