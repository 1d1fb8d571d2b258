#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "bogoflow/util.hpp"

namespace bogoflow {

// Periodic spectral grid on [0,L)^d with M points per axis, M a power of two.
// Flat index is row-major; axis index j carries wavenumber 2*pi*j/L for
// j < M/2 and 2*pi*(j-M)/L for j >= M/2 (FFT-standard ordering).
class Grid {
 public:
  Grid(int dim, int points_per_axis, double box_side);

  int dim() const { return dim_; }
  int points_per_axis() const { return m_; }
  double box_side() const { return length_; }
  double spacing() const { return length_ / m_; }
  std::size_t sites() const { return sites_; }
  double cell_volume() const { return cell_volume_; }

  // wavenumber component for axis index j
  double wavenumber(int j) const { return kaxis_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& k_squared() const { return ksq_; }

  std::array<int, 3> unflatten(std::size_t idx) const;
  std::size_t flatten(const std::array<int, 3>& ix) const;

  // minimal-image displacement (in length units) of site i relative to site j
  std::array<double, 3> min_image(std::size_t i, std::size_t j) const;
  double min_image_distance(std::size_t i, std::size_t j) const;
  // doubled-grid flat index of the midpoint along the minimal-image path
  std::size_t midpoint_doubled_index(std::size_t i, std::size_t j) const;

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && m_ == o.m_ && length_ == o.length_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_;
  int m_;
  double length_;
  std::size_t sites_;
  double cell_volume_;
  std::vector<double> kaxis_;
  std::vector<double> ksq_;  // |k|^2 per flat index
};

// Complex samples on a grid; quadrature convention: integral ~ h^d * sum.
class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(const Grid& grid, Eigen::VectorXcd values);
  explicit ComplexField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  const Eigen::VectorXcd& values() const { return v_; }
  Eigen::VectorXcd& values() { return v_; }
  cplx operator[](std::size_t i) const { return v_[static_cast<Eigen::Index>(i)]; }

 private:
  Grid grid_{1, 8, 1.0};
  Eigen::VectorXcd v_;
};

// --- FFT (FFTW-backed, plans cached per grid signature) ---
Eigen::VectorXcd fft_forward(const Grid& g, const Eigen::VectorXcd& v);
Eigen::VectorXcd fft_backward(const Grid& g, const Eigen::VectorXcd& v);  // includes 1/M^d

// --- operations ---
ComplexField laplacian(const ComplexField& f);
ComplexField convolve(const ComplexField& w, const ComplexField& rho);
cplx inner(const ComplexField& f, const ComplexField& g);
double norm_l2(const ComplexField& f);
double norm_hs_sobolev(const ComplexField& f, int s);  // H^s via (1+|k|^2)^{s/2}
ComplexField gradient_component(const ComplexField& f, int axis);

// normalized plane wave e^{i k.x}/sqrt(L^d) with integer mode numbers per axis
ComplexField plane_wave(const Grid& g, const std::array<int, 3>& mode);
// normalized periodic Gaussian bump centered at `center` (fraction of L per axis)
ComplexField gaussian_bump(const Grid& g, double width, const std::array<double, 3>& center);
ComplexField normalized(const ComplexField& f);

// band-limited zero-padded interpolation onto the doubled grid (2M per axis)
ComplexField fourier_interpolate_doubled(const ComplexField& f);

// dense operator matrices in the orthonormal-site (weighted) convention
Eigen::MatrixXcd dense_laplacian(const Grid& g);
Eigen::MatrixXcd dense_derivative(const Grid& g, int axis);
Eigen::MatrixXcd dense_fourier(const Grid& g);  // unitary DFT matrix

// weighted-vector helpers: w = h^{d/2} * samples (orthonormal site basis)
Eigen::VectorXcd to_weighted(const ComplexField& f);
ComplexField from_weighted(const Grid& g, const Eigen::VectorXcd& w);

// binary field snapshot (magic "CFLD")
void save_field(const ComplexField& f, const std::string& path);
ComplexField load_field(const std::string& path);

}  // namespace bogoflow
