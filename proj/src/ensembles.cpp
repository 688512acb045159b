#include "gspec/ensembles.hpp"

#include <algorithm>
#include <cmath>

#include "gspec/error.hpp"
#include "gspec/rng.hpp"
#include "overloaded.hpp"

namespace gspec {

using detail::Overloaded;

namespace {

double grid_point(std::size_t i, std::size_t n) { return static_cast<double>(i + 1) / static_cast<double>(n); }

double overlap(double a, double b, double c, double d) { return std::max(0.0, std::min(b, d) - std::max(a, c)); }

// Mean of a step kernel over [a,b) x [c,d).
double step_average(const BlockKernel& k, double a, double b, double c, double d) {
  const double h = 1.0 / static_cast<double>(k.n);
  double s = 0.0;
  for (std::size_t p = block_index(a, k.n); p <= block_index(std::nextafter(b, 0.0), k.n); ++p) {
    const double wx = overlap(a, b, p * h, (p + 1) * h);
    for (std::size_t q = block_index(c, k.n); q <= block_index(std::nextafter(d, 0.0), k.n); ++q)
      s += wx * overlap(c, d, q * h, (q + 1) * h) * k(p, q);
  }
  return s / ((b - a) * (d - c));
}

double block_average(const Graphon& w, std::size_t i, std::size_t j, std::size_t n) {
  const double h = 1.0 / static_cast<double>(n);
  const double a = i * h, b = (i + 1) * h, c = j * h, d = (j + 1) * h;
  return std::visit(Overloaded{
                        [](const ConstantGraphon& g) { return g.value; },
                        [&](const ProductGraphon& g) { return g.profile.integral(a, b) * g.profile.integral(c, d) / (h * h); },
                        [&](const StepGraphon& g) { return step_average(g.kernel, a, b, c, d); },
                        [&](const KernelGraphon& g) {
                          constexpr int kSub = 8;
                          double s = 0.0;
                          for (int u = 0; u < kSub; ++u)
                            for (int v = 0; v < kSub; ++v) s += g.fn(a + (u + 0.5) * h / kSub, c + (v + 0.5) * h / kSub);
                          return s / (kSub * kSub);
                        },
                    },
                    w.variant());
}

template <class T>
const T& expect(const EnsembleSpec& spec, const char* what) {
  const T* m = std::get_if<T>(&spec.model);
  if (!m) throw ValidationError(std::string(what) + " called with a " + spec.name() + " spec");
  return *m;
}

// Bernoulli adjacency with edge probability prob(i, j) for i < j.
template <class Prob>
SymMatrix bernoulli_graph(std::size_t n, std::uint64_t seed, Prob prob) {
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = prob(i, j);
      if (p > 1.0) {
        throw ValidationError("edge probability " + std::to_string(p) + " exceeds 1 at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      CounterRng rng(seed, stream::kEntries, i, j);
      if (rng.bernoulli(p)) a.set(i, j, 1.0);
    }
  }
  return a;
}

std::vector<double> latent_positions(std::size_t n, std::uint64_t seed) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = CounterRng(seed, stream::kLatent, i).uniform();
  return x;
}

}  // namespace

void EnsembleSpec::validate() const {
  if (n < 2) throw ValidationError("ensemble dimension N must be at least 2, got " + std::to_string(n));
  auto check_eps = [](double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0, 1), got " + std::to_string(eps));
  };
  std::visit(Overloaded{
                 [](const GeneralizedWigner&) {},
                 [&](const InhomER& m) {
                   // eps = 1 is allowed here so that complete graphs remain expressible.
                   if (!(m.eps > 0.0 && m.eps <= 1.0)) {
                     throw ValidationError("eps must lie in (0, 1], got " + std::to_string(m.eps));
                   }
                   if (m.eps * m.f.sup() > 1.0 + 1e-12) throw ValidationError("eps * sup f exceeds 1");
                 },
                 [&](const SparseWRandom& m) { check_eps(m.eps); },
                 [&](const Constrained& m) {
                   if (m.kstar.size() != n) throw ValidationError("kstar must have exactly N entries");
                   for (int k : m.kstar)
                     if (k <= 0) throw ValidationError("kstar entries must be positive");
                 },
                 [](const DecoupledModel&) {},
                 [](const MultiplicativeModel&) {},
             },
             model);
}

std::string EnsembleSpec::name() const {
  return std::visit(Overloaded{
                        [](const GeneralizedWigner&) { return "generalized_wigner"; },
                        [](const InhomER&) { return "inhom_er"; },
                        [](const SparseWRandom&) { return "sparse_w_random"; },
                        [](const Constrained&) { return "constrained"; },
                        [](const DecoupledModel&) { return "decoupled"; },
                        [](const MultiplicativeModel&) { return "multiplicative"; },
                    },
                    model);
}

std::vector<int> cube_root_degrees(std::size_t n) {
  std::vector<int> k(n);
  int c = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    while (static_cast<std::size_t>(c + 1) * (c + 1) * (c + 1) <= i) ++c;
    k[i - 1] = c;
  }
  return k;
}

double profile_entry(const Graphon& w, std::size_t i, std::size_t j, std::size_t n, VarianceRule rule) {
  if (rule == VarianceRule::kBlockAverage) return block_average(w, i, j, n);
  return w(grid_point(i, n), grid_point(j, n));
}

SymMatrix sample_generalized_wigner(const EnsembleSpec& spec) {
  const auto& m = expect<GeneralizedWigner>(spec, "sample_generalized_wigner");
  spec.validate();
  const std::size_t n = spec.n;
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sigma = std::sqrt(profile_entry(m.w, i, j, n, m.rule));
      CounterRng rng(spec.seed, stream::kEntries, i, j);
      double x = sigma * (m.law == EntryLaw::kGaussian ? rng.normal() : rng.rademacher());
      if (m.mean) x += profile_entry(*m.mean, i, j, n, m.rule);
      a.set(i, j, x);
    }
  }
  return a;
}

SymMatrix laplacian_of(const SymMatrix& a) {
  const std::size_t n = a.size();
  SymMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      row += a(i, j);
      if (j > i) d.set(i, j, a(i, j));
    }
    d.set(i, i, -row);
  }
  return d;
}

SymMatrix center_scale(const SymMatrix& m, const SymMatrix& means) {
  return center_scale(m, means, std::sqrt(static_cast<double>(m.size())));
}

SymMatrix center_scale(const SymMatrix& m, const SymMatrix& means, double scale) {
  if (!(scale > 0.0)) throw ValidationError("scale must be positive");
  return scaled_difference(m, means, 1.0 / scale);
}

SymMatrix sample_inhom_er(const EnsembleSpec& spec) {
  const auto& m = expect<InhomER>(spec, "sample_inhom_er");
  if (spec.n < 2) throw ValidationError("ensemble dimension N must be at least 2");
  const std::size_t n = spec.n;
  return bernoulli_graph(n, spec.seed,
                         [&](std::size_t i, std::size_t j) { return m.eps * m.f(grid_point(i, n), grid_point(j, n)); });
}

SparseSample sample_sparse_w_random(const EnsembleSpec& spec) {
  const auto& m = expect<SparseWRandom>(spec, "sample_sparse_w_random");
  spec.validate();
  SparseSample out{SymMatrix(), latent_positions(spec.n, spec.seed)};
  const auto& x = out.latents;
  out.adjacency = bernoulli_graph(spec.n, spec.seed, [&](std::size_t i, std::size_t j) { return m.eps * m.w(x[i], x[j]); });
  return out;
}

double constrained_scaling(std::span<const int> kstar) {
  if (kstar.empty()) throw ValidationError("kstar is empty");
  double total = 0.0;
  int top = 0;
  for (int k : kstar) {
    total += k;
    top = std::max(top, k);
  }
  return static_cast<double>(top) * top / total;
}

SymMatrix sample_constrained(const ConstrainedFit& fit, std::uint64_t seed) {
  return bernoulli_graph(fit.p.size(), seed, [&](std::size_t i, std::size_t j) { return fit.p(i, j); });
}

SymMatrix sample_decoupled_model(const Graphon& w, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ValidationError("ensemble dimension N must be at least 2");
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  SymMatrix a(n);
  std::vector<double> row_var(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double var = w(grid_point(i, n), grid_point(j, n));
      row_var[i] += var;
      row_var[j] += var;
      a.set(i, j, std::sqrt(var) * inv_sqrt_n * CounterRng(seed, stream::kEntries, i, j).normal());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double z = CounterRng(seed, stream::kDiagonal, i).normal();
    a.set(i, i, z * std::sqrt(row_var[i] / static_cast<double>(n)));
  }
  return a;
}

SymMatrix sample_multiplicative_model(const Profile1D& r, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ValidationError("ensemble dimension N must be at least 2");
  const double nn = static_cast<double>(n);
  std::vector<double> rr(n);
  for (std::size_t i = 0; i < n; ++i) rr[i] = std::sqrt(nn * r.integral(i / nn, (i + 1) / nn));
  const double alpha = std::sqrt(r.integral_power(1));
  const double inv_sqrt_n = 1.0 / std::sqrt(nn);
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double g = inv_sqrt_n * CounterRng(seed, stream::kEntries, i, j).normal();
      double v = rr[i] * rr[j] * g;
      if (i == j) v += alpha * rr[i] * CounterRng(seed, stream::kDiagonal, i).normal();
      a.set(i, j, v);
    }
  }
  return a;
}

SymMatrix expected_matrix(const EnsembleSpec& spec, std::span<const double> latents) {
  const std::size_t n = spec.n;
  SymMatrix e(n);
  auto fill = [&](auto value) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) e.set(i, j, value(i, j));
  };
  std::visit(Overloaded{
                 [&](const GeneralizedWigner& m) {
                   if (m.mean) fill([&](std::size_t i, std::size_t j) { return profile_entry(*m.mean, i, j, n, m.rule); });
                 },
                 [&](const InhomER& m) {
                   fill([&](std::size_t i, std::size_t j) { return m.eps * m.f(grid_point(i, n), grid_point(j, n)); });
                 },
                 [&](const SparseWRandom& m) {
                   if (latents.size() != n) throw ValidationError("sparse W-random mean needs the sampled latents");
                   fill([&](std::size_t i, std::size_t j) { return m.eps * m.w(latents[i], latents[j]); });
                 },
                 [&](const Constrained& m) { e = solve_constrained(m.kstar).p; },
                 [](const DecoupledModel&) {},
                 [](const MultiplicativeModel&) {},
             },
             spec.model);
  return e;
}

ScaledSample sample_scaled_laplacian(const EnsembleSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  return std::visit(
      Overloaded{
          [&](const GeneralizedWigner&) {
            const double s = std::sqrt(n);
            return ScaledSample{center_scale(laplacian_of(sample_generalized_wigner(spec)),
                                             laplacian_of(expected_matrix(spec)), s),
                                s};
          },
          [&](const InhomER& m) {
            const double s = std::sqrt(n * m.eps);
            return ScaledSample{
                center_scale(laplacian_of(sample_inhom_er(spec)), laplacian_of(expected_matrix(spec)), s), s};
          },
          [&](const SparseWRandom& m) {
            const double s = std::sqrt(n * m.eps);
            auto sample = sample_sparse_w_random(spec);
            return ScaledSample{center_scale(laplacian_of(sample.adjacency),
                                             laplacian_of(expected_matrix(spec, sample.latents)), s),
                                s};
          },
          [&](const Constrained& m) {
            const auto fit = solve_constrained(m.kstar);
            const double s = std::sqrt(n * constrained_scaling(m.kstar));
            return ScaledSample{center_scale(laplacian_of(sample_constrained(fit, spec.seed)), laplacian_of(fit.p), s),
                                s};
          },
          [&](const DecoupledModel& m) { return ScaledSample{sample_decoupled_model(m.w, spec.n, spec.seed), 1.0}; },
          [&](const MultiplicativeModel& m) {
            return ScaledSample{sample_multiplicative_model(m.r, spec.n, spec.seed), 1.0};
          },
      },
      spec.model);
}

std::optional<Graphon> limit_variance_kernel(const EnsembleSpec& spec) {
  return std::visit(Overloaded{
                        [](const GeneralizedWigner& m) -> std::optional<Graphon> { return m.w; },
                        [](const InhomER& m) -> std::optional<Graphon> { return bernoulli_variance_kernel(m.f, m.eps); },
                        [](const SparseWRandom& m) -> std::optional<Graphon> {
                          return bernoulli_variance_kernel(m.w, m.eps);
                        },
                        [](const Constrained&) -> std::optional<Graphon> { return std::nullopt; },
                        [](const DecoupledModel& m) -> std::optional<Graphon> { return m.w; },
                        [](const MultiplicativeModel& m) -> std::optional<Graphon> { return Graphon::product(m.r); },
                    },
                    spec.model);
}

}  // namespace gspec
