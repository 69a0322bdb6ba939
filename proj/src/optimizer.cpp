// Exponent optimization for the nonrelativistic ground state.
//
// The problem p^2/(2 mu) - Z/r is solved in reduced units (mu = Z = 1) and
// mapped back exactly: zeta = (Z mu)^2 zeta_ref, E = Z^2 mu E_ref. Stages:
// an even-tempered (a, b) scan, quasi-Newton descent on t = ln zeta with
// Hellmann-Feynman gradients, then cyclic golden-section sweeps per
// coordinate until a whole cycle gains less than the target.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "nopair/errors.hpp"
#include "nopair/integrals.hpp"
#include "nopair/system.hpp"

namespace nopair {

namespace {

const HighReal kInfinity = std::numeric_limits<HighReal>::infinity();

TwoBodySystem reference_system() {
  TwoBodySystem s;
  s.name = "reference";
  s.m1 = 2;
  s.m2 = 2;
  s.q1q2 = -1;
  return s;
}

struct Evaluation {
  HighReal energy = kInfinity;
  NonrelativisticSolution solution;
  bool ok = false;
};

class Objective {
public:
  Evaluation evaluate(const Vector& t) {
    ++calls_;
    Evaluation ev;
    std::vector<HighReal> z(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) z[i] = exp(t[i]);
    std::vector<HighReal> sorted = z;
    std::sort(sorted.begin(), sorted.end());
    if (!BasisSet::well_separated(sorted)) return ev;
    try {
      // Order-preserving evaluation so that gradients map back onto t.
      const std::size_t n = z.size();
      SymMatrix h(n), s(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          const ExponentPair p(z[i], z[j]);
          s.set(i, j, overlap(p));
          h.set(i, j, -laplacian(p) / 2 - coulomb(p));
        }
      EigenPair low = lowest_eigenpair(h, s);
      // Anything below the exact -1/2 is numerical breakdown of a nearly
      // dependent basis, not a better variational bound.
      if (low.value < HighReal(-0.5)) return ev;
      ev.energy = low.value;
      ev.solution = {low.value, std::move(low.vector)};
      ev.ok = true;
    } catch (const NumericalError&) {
      ev.ok = false;
    }
    return ev;
  }

  HighReal energy(const Vector& t) { return evaluate(t).energy; }

  Vector gradient(const Vector& t, const Evaluation& ev) {
    // nonrelativistic_gradient works on a sorted basis; map through the order.
    const std::size_t n = t.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    std::vector<HighReal> z(n);
    Vector c(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = exp(t[order[i]]);
      c[i] = ev.solution.coefficients[order[i]];
    }
    const BasisSet basis(z);
    const Vector g = nonrelativistic_gradient(reference_system(), basis, {ev.energy, c});
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[order[i]] = g[i];
    return out;
  }

  std::size_t calls() const { return calls_; }

private:
  std::size_t calls_ = 0;
};

Vector even_tempered(const HighReal& ln_a, const HighReal& ln_b, std::size_t n) {
  Vector t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = ln_a + HighReal(i) * ln_b;
  return t;
}

// Golden-section minimization of f on [lo, hi] assuming a bracketed minimum.
template <class F>
std::pair<HighReal, HighReal> golden(F&& f, HighReal lo, HighReal hi, const HighReal& tol) {
  const HighReal r = (sqrt(HighReal(5)) - 1) / 2;
  HighReal x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  HighReal f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// One-dimensional minimization around x0 (value f0): bracket by expansion,
// then golden section. Returns the best point found, never worse than x0.
template <class F>
std::pair<HighReal, HighReal> line_minimize(F&& f, const HighReal& x0, const HighReal& f0, HighReal step,
                                            const HighReal& tol) {
  HighReal fl = f(x0 - step), fr = f(x0 + step);
  HighReal lo = x0 - step, hi = x0 + step;
  int expansions = 0;
  // Walk downhill until the minimum is bracketed.
  while ((fl < f0 || fr < f0) && expansions < 40) {
    if (fl < fr) {
      if (fl >= f0) break;
      const HighReal next = lo - step;
      const HighReal fn = f(next);
      hi = lo + step;
      if (fn >= fl) {
        hi = lo + step;
        lo = next;
        break;
      }
      lo = next;
      fl = fn;
    } else {
      if (fr >= f0) break;
      const HighReal next = hi + step;
      const HighReal fn = f(next);
      if (fn >= fr) {
        lo = hi - step;
        hi = next;
        break;
      }
      hi = next;
      fr = fn;
    }
    step *= 2;
    ++expansions;
  }
  auto best = golden(f, lo, hi, tol);
  if (!(best.second < f0)) return {x0, f0};
  return best;
}

struct State {
  Vector t;
  HighReal energy;
};

State scan_even_tempered(Objective& obj, std::size_t n) {
  State best{Vector(n), kInfinity};
  if (n == 1) {
    auto f = [&](const HighReal& x) { return obj.energy(Vector{x}); };
    auto [x, e] = golden(f, HighReal(-8), HighReal(4), HighReal(1e-12));
    return {Vector{x}, e};
  }
  // Coarse grid in (ln a, ln b); the reference problem has its density
  // centred near zeta ~ 0.3 with tails to both sides.
  for (int ia = 0; ia <= 16; ++ia) {
    const HighReal ln_a = HighReal(-9) + HighReal(ia) * HighReal(0.5);
    for (int ib = 0; ib <= 12; ++ib) {
      const HighReal ln_b = HighReal(0.15) + HighReal(ib) * HighReal(0.15);
      Vector t = even_tempered(ln_a, ln_b, n);
      const HighReal e = obj.energy(t);
      if (e < best.energy) best = {t, e};
    }
  }
  // Refine (a, b) by alternating golden sections.
  HighReal ln_a = best.t[0], ln_b = best.t[1] - best.t[0];
  for (int pass = 0; pass < 4; ++pass) {
    auto fa = [&](const HighReal& x) { return obj.energy(even_tempered(x, ln_b, n)); };
    auto ra = line_minimize(fa, ln_a, best.energy, HighReal(0.1), HighReal(1e-6));
    ln_a = ra.first;
    auto fb = [&](const HighReal& x) { return obj.energy(even_tempered(ln_a, x, n)); };
    auto rb = line_minimize(fb, ln_b, ra.second, HighReal(0.05), HighReal(1e-6));
    ln_b = rb.first;
    best = {even_tempered(ln_a, ln_b, n), rb.second};
  }
  return best;
}

std::size_t quasi_newton(Objective& obj, State& s, std::size_t max_iter, bool verbose) {
  const std::size_t n = s.t.size();
  Evaluation ev = obj.evaluate(s.t);
  if (!ev.ok) return 0;
  Vector g = obj.gradient(s.t, ev);
  Matrix hinv = Matrix::identity(n);
  bool fresh = true;
  std::size_t quiet = 0, iter = 0;
  for (; iter < max_iter; ++iter) {
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -dot(hinv.row(i), g);
    HighReal slope = dot(g, d);
    if (!(slope < 0)) {
      hinv = Matrix::identity(n);
      fresh = true;
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = dot(g, d);
      if (!(slope < 0)) break;
    }
    HighReal dmax = 0;
    for (const auto& v : d) dmax = std::max(dmax, HighReal(abs(v)));
    if (dmax > HighReal(0.5)) {
      const HighReal f = HighReal(0.5) / dmax;
      for (auto& v : d) v *= f;
      slope *= f;
    }
    HighReal step = 1;
    Evaluation trial;
    Vector t_new(n);
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      for (std::size_t i = 0; i < n; ++i) t_new[i] = s.t[i] + step * d[i];
      trial = obj.evaluate(t_new);
      if (trial.ok && trial.energy <= s.energy + HighReal(1e-4) * step * slope) {
        accepted = true;
        break;
      }
      step /= 2;
    }
    if (!accepted) {
      if (fresh) break;
      hinv = Matrix::identity(n);
      fresh = true;
      continue;
    }
    const Vector g_new = obj.gradient(t_new, trial);
    Vector sv(n), yv(n);
    for (std::size_t i = 0; i < n; ++i) {
      sv[i] = t_new[i] - s.t[i];
      yv[i] = g_new[i] - g[i];
    }
    const HighReal gain = s.energy - trial.energy;
    s = {t_new, trial.energy};
    g = g_new;
    const HighReal ys = dot(yv, sv);
    if (ys > 0) {
      if (fresh) {
        // Shanno scaling of the initial inverse Hessian.
        const HighReal scale = ys / dot(yv, yv);
        for (std::size_t i = 0; i < n; ++i) hinv(i, i) = scale;
        fresh = false;
      }
      // BFGS inverse update: H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T.
      const HighReal rho = 1 / ys;
      Vector hy(n);
      for (std::size_t i = 0; i < n; ++i) hy[i] = dot(hinv.row(i), yv);
      const HighReal yhy = dot(yv, hy);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          hinv(i, j) += rho * ((1 + rho * yhy) * sv[i] * sv[j] - hy[i] * sv[j] - sv[i] * hy[j]);
    }
    HighReal gmax = 0;
    for (const auto& v : g) gmax = std::max(gmax, HighReal(abs(v)));
    if (verbose && iter % 50 == 0)
      std::cerr << "  quasi-Newton " << iter << " E_ref " << to_string(s.energy, 20) << " |g| "
                << to_string(gmax, 3) << "\n";
    quiet = gain < HighReal(1e-27) ? quiet + 1 : 0;
    if (quiet >= 8 || gmax < HighReal(1e-22)) break;
  }
  return iter;
}

OptimizationResult finish(Objective& obj, State s, const TwoBodySystem& sys, const OptimizerOptions& options,
                          std::size_t qn_iterations) {
  const std::size_t n = s.t.size();
  const HighReal z = -sys.q1q2;
  const HighReal energy_scale = z * z * sys.reduced_mass();
  const HighReal target_ref = HighReal(options.target) / energy_scale;

  OptimizationResult result;
  result.quasi_newton_iterations = qn_iterations;
  HighReal last_move = 0;
  for (std::size_t cycle = 0; cycle < options.max_cycles; ++cycle) {
    const HighReal start = s.energy;
    last_move = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto f = [&](const HighReal& x) {
        Vector t = s.t;
        t[k] = x;
        return obj.energy(t);
      };
      const auto [x, e] = line_minimize(f, s.t[k], s.energy, HighReal(1e-3), HighReal(1e-9));
      last_move = std::max(last_move, HighReal(abs(x - s.t[k])));
      s.t[k] = x;
      s.energy = e;
    }
    result.cycles = cycle + 1;
    if (options.verbose)
      std::cerr << "  cycle " << cycle + 1 << " E_ref " << to_string(s.energy, 20) << " gain "
                << to_string(start - s.energy, 3) << "\n";
    if (start - s.energy < target_ref) break;
  }
  if (last_move > HighReal(1e-3)) {
    result.stalled = true;
    result.note = "last cycle gained less than the target while exponents still moved by " +
                  to_string(last_move, 3) + " in ln(zeta)";
  }
  std::vector<HighReal> zeta(n);
  const HighReal length_scale = z * sys.reduced_mass();
  for (std::size_t i = 0; i < n; ++i) zeta[i] = exp(s.t[i]) * length_scale * length_scale;
  result.basis = BasisSet(std::move(zeta));
  result.energy = solve_nonrelativistic(sys, result.basis).energy;
  if (options.verbose) std::cerr << "  objective evaluations: " << obj.calls() << "\n";
  return result;
}

void check_bound(const TwoBodySystem& sys) {
  sys.validate();
  if (!(sys.q1q2 < 0)) throw std::invalid_argument("exponent optimization needs an attractive system");
}

}  // namespace

OptimizationResult optimize_exponents(const TwoBodySystem& sys, std::size_t n_b, const OptimizerOptions& options) {
  check_bound(sys);
  if (n_b == 0) throw std::invalid_argument("basis size must be at least 1");
  if (!(options.target > 0)) throw std::invalid_argument("optimization target must be positive");
  Objective obj;
  State s = scan_even_tempered(obj, n_b);
  if (options.verbose) std::cerr << "  even-tempered start E_ref " << to_string(s.energy, 20) << "\n";
  const std::size_t it = quasi_newton(obj, s, options.max_quasi_newton_iterations, options.verbose);
  return finish(obj, s, sys, options, it);
}

OptimizationResult refine_exponents(const TwoBodySystem& sys, const BasisSet& start, const OptimizerOptions& options) {
  check_bound(sys);
  const HighReal z = -sys.q1q2;
  const HighReal length_scale = z * sys.reduced_mass();
  Objective obj;
  State s{Vector(start.size()), kInfinity};
  for (std::size_t i = 0; i < start.size(); ++i) s.t[i] = log(start[i] / (length_scale * length_scale));
  s.energy = obj.energy(s.t);
  if (!(s.energy < kInfinity)) throw std::invalid_argument("starting basis is numerically degenerate");
  const std::size_t it = quasi_newton(obj, s, options.max_quasi_newton_iterations, options.verbose);
  return finish(obj, s, sys, options, it);
}

}  // namespace nopair
