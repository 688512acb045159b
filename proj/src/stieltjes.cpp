#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "gspec/error.hpp"
#include "gspec/free_convolution.hpp"

namespace gspec {

namespace {

constexpr double kSupport = 12.0;
constexpr double kRelTol = 1e-12;
constexpr int kMaxDepth = 40;

double phi(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                     0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                     0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                     0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
cplx gauss_kronrod(const F& f, double a, double b, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx k = fc * kWgk[7];
  cplx g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const cplx s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  err = std::abs((k - g) * h);
  return k * h;
}

template <class F>
cplx adaptive(const F& f, double a, double b, double tol, int depth) {
  double err = 0.0;
  const cplx v = gauss_kronrod(f, a, b, err);
  if (err <= tol || depth >= kMaxDepth) return v;
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, depth + 1) + adaptive(f, m, b, 0.5 * tol, depth + 1);
}

// Mass of N(0,1) beyond +-12, placed at the conditional tail mean.
cplx tail_correction(cplx z) {
  const double q = 0.5 * std::erfc(kSupport / std::numbers::sqrt2);
  const double mean = phi(kSupport) / q;
  return q * (1.0 / (z - mean) + 1.0 / (z + mean));
}

}  // namespace

cplx stieltjes_gaussian(cplx z) {
  if (!(z.imag() > 0.0)) throw DomainError("stieltjes_gaussian needs Im z > 0");
  // Far from the support the leading terms of 1/z + 1/z^3 + 3/z^5 + ... are
  // exact to double precision.
  if (std::abs(z) > 1e4) {
    const cplx w = 1.0 / z, w2 = w * w;
    return w * (1.0 + w2 * (1.0 + 3.0 * w2 * (1.0 + 5.0 * w2)));
  }
  const double x0 = z.real();
  const bool subtract = z.imag() < 1.0 && std::abs(x0) < kSupport;
  // Near the real axis the integrand peaks at t = Re z. The first-order Taylor
  // part of phi around x0 is integrated in closed form over a window, leaving a
  // smooth remainder for the quadrature.
  double a = 0.0, b = 0.0, p0 = 0.0, p1 = 0.0;
  cplx closed{0.0, 0.0};
  if (subtract) {
    a = std::max(-kSupport, x0 - 1.0);
    b = std::min(kSupport, x0 + 1.0);
    p0 = phi(x0);
    p1 = -x0 * p0;
    const cplx c{0.0, z.imag()};
    const cplx i0 = std::log(c - (a - x0)) - std::log(c - (b - x0));
    const cplx i1 = -(b - a) + c * i0;
    closed = p0 * i0 + p1 * i1;
  }
  auto f = [&](double t) -> cplx {
    double num = phi(t);
    if (subtract && t >= a && t <= b) num -= p0 + p1 * (t - x0);
    return num / (z - t);
  };
  // Scale for the tolerance: |G| is at least of order 1 / (|z| + 12).
  const double scale = std::max(std::abs(closed), 1.0 / (std::abs(z) + kSupport));
  const double tol = kRelTol * scale;
  cplx total = closed + tail_correction(z);
  // Panel breaks at the window edges keep the kinks of the subtracted
  // integrand on panel boundaries.
  std::vector<double> cuts{-kSupport};
  for (int k = -11; k <= 11; ++k) cuts.push_back(k);
  if (subtract) {
    cuts.push_back(a);
    cuts.push_back(b);
  }
  cuts.push_back(kSupport);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double span = 2.0 * kSupport;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double w = cuts[p + 1] - cuts[p];
    if (w <= 0.0) continue;
    total += adaptive(f, cuts[p], cuts[p + 1], tol * w / span, 0);
  }
  return total;
}

SubordinationResult gamma_m_solve(cplx z, const SubordinationOptions& opts) {
  if (!(z.imag() > 0.0)) throw DomainError("gamma_m_stieltjes needs Im z > 0");
  cplx g = 1.0 / z;
  double step = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const cplx w = z - g;
    const cplx s = stieltjes_gaussian(w);
    cplx next;
    if (opts.method == SubordinationMethod::kNewton) {
      // F(G) = G - S(z - G), F'(G) = 1 + S'(z - G) = 2 - w S(w).
      next = g - (g - s) / (2.0 - w * s);
      // Keep iterates in the lower half-plane so z - G stays in the domain.
      if (!(next.imag() < 0.0)) next = (1.0 - opts.damping) * g + opts.damping * s;
    } else {
      next = (1.0 - opts.damping) * g + opts.damping * s;
    }
    step = std::abs(next - g);
    g = next;
    if (step < opts.tol) {
      const double residual = std::abs(g - stieltjes_gaussian(z - g));
      return {g, it, residual};
    }
  }
  throw ConvergenceError("gamma_M subordination did not converge after " + std::to_string(opts.max_iter) + " iterations",
                         step);
}

cplx gamma_m_stieltjes(cplx z, const SubordinationOptions& opts) { return gamma_m_solve(z, opts).g; }

StieltjesGrid gamma_m_stieltjes_grid(std::span<const double> xs, double eta, const SubordinationOptions& opts) {
  StieltjesGrid grid{std::vector<double>(xs.begin(), xs.end()), eta, {}};
  grid.values.reserve(xs.size());
  for (double x : xs) grid.values.push_back(gamma_m_stieltjes({x, eta}, opts));
  return grid;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(hi > lo) || !(step > 0.0)) throw ValidationError("grid needs lo < hi and a positive step");
  const auto count = static_cast<long>(std::llround((hi - lo) / step));
  std::vector<double> xs(static_cast<std::size_t>(count) + 1);
  // Symmetric ranges are built from signed integer offsets around the center
  // so that xs[i] == -xs[count - i] holds exactly.
  const double center = 0.5 * (lo + hi);
  for (long i = 0; i <= count; ++i) xs[static_cast<std::size_t>(i)] = center + (2 * i - count) * (0.5 * step);
  return xs;
}

DensityCurve gamma_m_density(std::span<const double> xs, double eta, bool extrapolate,
                             const SubordinationOptions& opts) {
  if (!(eta >= 1e-4 && eta <= 1e-1)) throw DomainError("density eta must lie in [1e-4, 1e-1]");
  DensityCurve c;
  c.xs.assign(xs.begin(), xs.end());
  c.density.resize(xs.size());
  c.eta = eta;
  c.extrapolated = extrapolate;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double rho = -gamma_m_stieltjes({xs[i], eta}, opts).imag() / std::numbers::pi;
    if (extrapolate) rho = 2.0 * rho + gamma_m_stieltjes({xs[i], 2.0 * eta}, opts).imag() / std::numbers::pi;
    c.density[i] = std::max(rho, 0.0);
  }
  return c;
}

double DensityCurve::mass() const { return moment(0); }

double DensityCurve::moment(int k) const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = std::pow(xs[i], k) * density[i];
    const double b = std::pow(xs[i + 1], k) * density[i + 1];
    s += 0.5 * (a + b) * (xs[i + 1] - xs[i]);
  }
  return s;
}

const std::vector<double>& DensityCurve::cumulative() const {
  if (cumulative_.size() != xs.size()) {
    cumulative_.assign(xs.size(), 0.0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      cumulative_[i + 1] = cumulative_[i] + 0.5 * (density[i] + density[i + 1]) * (xs[i + 1] - xs[i]);
  }
  return cumulative_;
}

double DensityCurve::cdf(double x) const {
  if (xs.empty() || x <= xs.front()) return 0.0;
  if (x >= xs.back()) return 1.0;
  const auto& cum = cumulative();
  const auto i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
  const double h = xs[i + 1] - xs[i];
  const double t = (x - xs[i]) / h;
  // Exact integral of the linear interpolant from xs[i] to x.
  const double part = h * t * (density[i] + 0.5 * t * (density[i + 1] - density[i]));
  return std::clamp((cum[i] + part) / cum.back(), 0.0, 1.0);
}

double DensityCurve::quantile(double p) const {
  if (xs.empty()) throw ValidationError("empty density curve");
  double lo = xs.front(), hi = xs.back();
  for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void write_density_csv(const DensityCurve& c, const std::filesystem::path& path, const nlohmann::json& config) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path.string() + " for writing");
  os << std::setprecision(17);
  if (!config.is_null()) os << "# config: " << config.dump() << '\n';
  os << "# eta=" << c.eta << " extrapolated=" << (c.extrapolated ? "true" : "false") << '\n';
  os << "x,density\n";
  for (std::size_t i = 0; i < c.xs.size(); ++i) os << c.xs[i] << ',' << c.density[i] << '\n';
}

void write_stieltjes_csv(const StieltjesGrid& g, const std::filesystem::path& path, const nlohmann::json& config) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path.string() + " for writing");
  os << std::setprecision(17);
  if (!config.is_null()) os << "# config: " << config.dump() << '\n';
  os << "# eta=" << g.eta << '\n';
  os << "x,ReG,ImG\n";
  for (std::size_t i = 0; i < g.xs.size(); ++i) os << g.xs[i] << ',' << g.values[i].real() << ',' << g.values[i].imag() << '\n';
}

}  // namespace gspec
