#include "bogoflow/grid.hpp"

#include <fftw3.h>

#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bogoflow {

Grid::Grid(int dim, int points_per_axis, double box_side)
    : dim_(dim), m_(points_per_axis), length_(box_side) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1, 2 or 3");
  if (m_ < 8 || !is_power_of_two(m_))
    throw std::invalid_argument("Grid: points per axis must be a power of two >= 8");
  if (!(length_ > 0.0)) throw std::invalid_argument("Grid: box side must be positive");
  sites_ = 1;
  for (int a = 0; a < dim_; ++a) sites_ *= static_cast<std::size_t>(m_);
  cell_volume_ = std::pow(spacing(), dim_);
  kaxis_.resize(static_cast<std::size_t>(m_));
  for (int j = 0; j < m_; ++j) {
    const int jj = j < m_ / 2 ? j : j - m_;
    kaxis_[static_cast<std::size_t>(j)] = 2.0 * M_PI * jj / length_;
  }
  ksq_.resize(sites_);
  for (std::size_t idx = 0; idx < sites_; ++idx) {
    const auto ix = unflatten(idx);
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) s += wavenumber(ix[static_cast<std::size_t>(a)]) *
                                        wavenumber(ix[static_cast<std::size_t>(a)]);
    ksq_[idx] = s;
  }
}

std::array<int, 3> Grid::unflatten(std::size_t idx) const {
  std::array<int, 3> ix{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    ix[static_cast<std::size_t>(a)] = static_cast<int>(idx % static_cast<std::size_t>(m_));
    idx /= static_cast<std::size_t>(m_);
  }
  return ix;
}

std::size_t Grid::flatten(const std::array<int, 3>& ix) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a)
    idx = idx * static_cast<std::size_t>(m_) +
          static_cast<std::size_t>(((ix[static_cast<std::size_t>(a)] % m_) + m_) % m_);
  return idx;
}

std::array<double, 3> Grid::min_image(std::size_t i, std::size_t j) const {
  const auto a = unflatten(i), b = unflatten(j);
  std::array<double, 3> u{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) {
    int del = a[static_cast<std::size_t>(d)] - b[static_cast<std::size_t>(d)];
    if (del > m_ / 2) del -= m_;
    if (del <= -m_ / 2) del += m_;
    u[static_cast<std::size_t>(d)] = del * spacing();
  }
  return u;
}

double Grid::min_image_distance(std::size_t i, std::size_t j) const {
  const auto u = min_image(i, j);
  return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
}

std::size_t Grid::midpoint_doubled_index(std::size_t i, std::size_t j) const {
  const auto a = unflatten(i), b = unflatten(j);
  std::size_t idx = 0;
  const int m2 = 2 * m_;
  for (int d = 0; d < dim_; ++d) {
    int del = a[static_cast<std::size_t>(d)] - b[static_cast<std::size_t>(d)];
    int shift = 0;
    if (del > m_ / 2) shift = -m_;
    if (del <= -m_ / 2) shift = m_;
    // doubled-grid coordinate of b + (a - b + shift)/2
    int c = 2 * b[static_cast<std::size_t>(d)] + del + shift;
    c = ((c % m2) + m2) % m2;
    idx = idx * static_cast<std::size_t>(m2) + static_cast<std::size_t>(c);
  }
  return idx;
}

ComplexField::ComplexField(const Grid& grid, Eigen::VectorXcd values)
    : grid_(grid), v_(std::move(values)) {
  if (static_cast<std::size_t>(v_.size()) != grid_.sites())
    throw std::invalid_argument("ComplexField: value count does not match grid");
}

ComplexField::ComplexField(const Grid& grid)
    : grid_(grid), v_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.sites()))) {}

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// FFTW plans keyed by (dim, M); created with FFTW_ESTIMATE so results are
// reproducible across runs. Transforms execute on caller-provided buffers
// via the new-array interface.
PlanPair& plans_for(const Grid& g) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g.dim(), g.points_per_axis());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PlanPair p;
  std::vector<int> n(static_cast<std::size_t>(g.dim()), g.points_per_axis());
  Eigen::VectorXcd tmp(static_cast<Eigen::Index>(g.sites()));
  auto* buf = reinterpret_cast<fftw_complex*>(tmp.data());
  p.fwd = fftw_plan_dft(g.dim(), n.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft(g.dim(), n.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  auto res = cache.emplace(key, p);
  return res.first->second;
}

}  // namespace

Eigen::VectorXcd fft_forward(const Grid& g, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = v;
  auto& p = plans_for(g);
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(p.fwd, buf, buf);
  return out;
}

Eigen::VectorXcd fft_backward(const Grid& g, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = v;
  auto& p = plans_for(g);
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(p.bwd, buf, buf);
  out /= static_cast<double>(g.sites());
  return out;
}

ComplexField laplacian(const ComplexField& f) {
  const Grid& g = f.grid();
  Eigen::VectorXcd fh = fft_forward(g, f.values());
  for (std::size_t i = 0; i < g.sites(); ++i)
    fh[static_cast<Eigen::Index>(i)] *= -g.k_squared()[i];
  return ComplexField(g, fft_backward(g, fh));
}

ComplexField gradient_component(const ComplexField& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("gradient_component: bad axis");
  Eigen::VectorXcd fh = fft_forward(g, f.values());
  for (std::size_t i = 0; i < g.sites(); ++i) {
    const auto ix = g.unflatten(i);
    fh[static_cast<Eigen::Index>(i)] *= cplx(0.0, g.wavenumber(ix[static_cast<std::size_t>(axis)]));
  }
  return ComplexField(g, fft_backward(g, fh));
}

ComplexField convolve(const ComplexField& w, const ComplexField& rho) {
  if (w.grid() != rho.grid()) throw std::invalid_argument("convolve: grid mismatch");
  const Grid& g = w.grid();
  Eigen::VectorXcd wh = fft_forward(g, w.values());
  Eigen::VectorXcd rh = fft_forward(g, rho.values());
  wh.array() *= rh.array();
  Eigen::VectorXcd out = fft_backward(g, wh);
  out *= g.cell_volume();
  return ComplexField(g, out);
}

cplx inner(const ComplexField& f, const ComplexField& g) {
  if (f.grid() != g.grid()) throw std::invalid_argument("inner: grid mismatch");
  return f.grid().cell_volume() * f.values().dot(g.values());
}

double norm_l2(const ComplexField& f) { return std::sqrt(std::real(inner(f, f))); }

double norm_hs_sobolev(const ComplexField& f, int s) {
  if (s != 0 && s != 1 && s != 2 && s != 4) throw std::invalid_argument("norm_hs: s in {0,1,2,4}");
  const Grid& g = f.grid();
  Eigen::VectorXcd fh = fft_forward(g, f.values());
  double acc = 0.0;
  for (std::size_t i = 0; i < g.sites(); ++i) {
    const double mult = std::pow(1.0 + g.k_squared()[i], s);
    acc += mult * std::norm(fh[static_cast<Eigen::Index>(i)]);
  }
  return std::sqrt(acc * g.cell_volume() / static_cast<double>(g.sites()));
}

ComplexField plane_wave(const Grid& g, const std::array<int, 3>& mode) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g.sites()));
  const double norm = 1.0 / std::sqrt(std::pow(g.box_side(), g.dim()));
  for (std::size_t i = 0; i < g.sites(); ++i) {
    const auto ix = g.unflatten(i);
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a)
      phase += 2.0 * M_PI * mode[static_cast<std::size_t>(a)] *
               ix[static_cast<std::size_t>(a)] / static_cast<double>(g.points_per_axis());
    v[static_cast<Eigen::Index>(i)] = norm * std::exp(cplx(0.0, phase));
  }
  return ComplexField(g, v);
}

ComplexField gaussian_bump(const Grid& g, double width, const std::array<double, 3>& center) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g.sites()));
  const double L = g.box_side();
  for (std::size_t i = 0; i < g.sites(); ++i) {
    const auto ix = g.unflatten(i);
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      double d = ix[static_cast<std::size_t>(a)] * g.spacing() -
                 center[static_cast<std::size_t>(a)] * L;
      d -= L * std::round(d / L);
      r2 += d * d;
    }
    v[static_cast<Eigen::Index>(i)] = std::exp(-r2 / (2.0 * width * width));
  }
  ComplexField f(g, v);
  return normalized(f);
}

ComplexField normalized(const ComplexField& f) {
  const double n = norm_l2(f);
  if (n == 0.0) throw std::invalid_argument("normalized: zero field");
  return ComplexField(f.grid(), f.values() / n);
}

ComplexField fourier_interpolate_doubled(const ComplexField& f) {
  const Grid& g = f.grid();
  const Grid g2(g.dim(), 2 * g.points_per_axis(), g.box_side());
  Eigen::VectorXcd fh = fft_forward(g, f.values());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g2.sites()));
  const int m = g.points_per_axis(), m2 = 2 * m;
  // place mode j of the source at the doubled-grid slot with the same
  // signed frequency; the Nyquist mode M/2 is split evenly between +-M/2
  for (std::size_t i = 0; i < g.sites(); ++i) {
    const auto ix = g.unflatten(i);
    std::vector<std::pair<int, double>> slots[3];
    for (int a = 0; a < g.dim(); ++a) {
      const int j = ix[static_cast<std::size_t>(a)];
      auto& s = slots[a];
      if (j == m / 2) {
        s.push_back({m / 2, 0.5});
        s.push_back({m2 - m / 2, 0.5});
      } else if (j < m / 2) {
        s.push_back({j, 1.0});
      } else {
        s.push_back({j - m + m2, 1.0});
      }
    }
    const cplx val = fh[static_cast<Eigen::Index>(i)];
    std::array<int, 3> jx{0, 0, 0};
    const auto place = [&](auto&& self, int axis, double wgt) -> void {
      if (axis == g.dim()) {
        std::size_t idx = 0;
        for (int a = 0; a < g.dim(); ++a)
          idx = idx * static_cast<std::size_t>(m2) + static_cast<std::size_t>(jx[a]);
        out[static_cast<Eigen::Index>(idx)] += wgt * val;
        return;
      }
      for (const auto& [slot, w] : slots[axis]) {
        jx[static_cast<std::size_t>(axis)] = slot;
        self(self, axis + 1, wgt * w);
      }
    };
    place(place, 0, 1.0);
  }
  Eigen::VectorXcd res = fft_backward(g2, out);
  res *= static_cast<double>(g2.sites()) / static_cast<double>(g.sites());
  return ComplexField(g2, res);
}

Eigen::MatrixXcd dense_fourier(const Grid& g) {
  const auto n = static_cast<Eigen::Index>(g.sites());
  Eigen::MatrixXcd f(n, n);
  const int m = g.points_per_axis();
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto kx = g.unflatten(static_cast<std::size_t>(r));
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto xx = g.unflatten(static_cast<std::size_t>(c));
      double phase = 0.0;
      for (int a = 0; a < g.dim(); ++a)
        phase += 2.0 * M_PI * kx[static_cast<std::size_t>(a)] * xx[static_cast<std::size_t>(a)] /
                 static_cast<double>(m);
      f(r, c) = std::exp(cplx(0.0, -phase));
    }
  }
  f /= std::sqrt(static_cast<double>(g.sites()));
  return f;
}

Eigen::MatrixXcd dense_laplacian(const Grid& g) {
  const Eigen::MatrixXcd f = dense_fourier(g);
  const auto n = static_cast<Eigen::Index>(g.sites());
  Eigen::VectorXd mult(n);
  for (std::size_t i = 0; i < g.sites(); ++i)
    mult[static_cast<Eigen::Index>(i)] = g.k_squared()[i];
  return f.adjoint() * mult.asDiagonal() * f;
}

Eigen::MatrixXcd dense_derivative(const Grid& g, int axis) {
  const Eigen::MatrixXcd f = dense_fourier(g);
  const auto n = static_cast<Eigen::Index>(g.sites());
  Eigen::VectorXcd mult(n);
  for (std::size_t i = 0; i < g.sites(); ++i) {
    const auto ix = g.unflatten(i);
    mult[static_cast<Eigen::Index>(i)] =
        cplx(0.0, g.wavenumber(ix[static_cast<std::size_t>(axis)]));
  }
  return f.adjoint() * mult.asDiagonal() * f;
}

Eigen::VectorXcd to_weighted(const ComplexField& f) {
  return std::sqrt(f.grid().cell_volume()) * f.values();
}

ComplexField from_weighted(const Grid& g, const Eigen::VectorXcd& w) {
  return ComplexField(g, w / std::sqrt(g.cell_volume()));
}

void save_field(const ComplexField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_field: cannot open " + path);
  const char magic[4] = {'C', 'F', 'L', 'D'};
  out.write(magic, 4);
  const std::uint32_t version = 1, d = static_cast<std::uint32_t>(f.grid().dim()),
                      m = static_cast<std::uint32_t>(f.grid().points_per_axis());
  const double L = f.grid().box_side();
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&d), 4);
  out.write(reinterpret_cast<const char*>(&m), 4);
  out.write(reinterpret_cast<const char*>(&L), 8);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.grid().sites() * sizeof(cplx)));
}

ComplexField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_field: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, "CFLD", 4) != 0) throw std::runtime_error("load_field: bad magic");
  std::uint32_t version = 0, d = 0, m = 0;
  double L = 0.0;
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&d), 4);
  in.read(reinterpret_cast<char*>(&m), 4);
  in.read(reinterpret_cast<char*>(&L), 8);
  if (version != 1) throw std::runtime_error("load_field: unsupported version");
  Grid g(static_cast<int>(d), static_cast<int>(m), L);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g.sites()));
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(g.sites() * sizeof(cplx)));
  if (!in) throw std::runtime_error("load_field: truncated file");
  return ComplexField(g, v);
}

}  // namespace bogoflow
