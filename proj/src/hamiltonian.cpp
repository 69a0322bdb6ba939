#include "nopair/hamiltonian.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "nopair/errors.hpp"

namespace nopair {

std::string_view to_string(SpinChannel channel) {
  switch (channel) {
    case SpinChannel::full:
      return "full";
    case SpinChannel::singlet:
      return "singlet";
    case SpinChannel::triplet:
      return "triplet";
  }
  return "?";
}

HighReal singlet_value(const SpinBlock& m) { return (m[1][1] - m[1][2] - m[2][1] + m[2][2]) / 2; }

HighReal triplet_value(const SpinBlock& m) { return m[0][0]; }

namespace {

// s1.s2 in the 2 s1 + s2 product basis.
constexpr int kSigmaDot[4][4] = {{1, 0, 0, 0}, {0, -1, 2, 0}, {0, 2, -1, 0}, {0, 0, 0, 1}};

// The channel reduction is only exact for blocks a + b s1.s2; anything else
// means a contraction bug.
void check_invariant(const SpinBlock& m, const char* what) {
  const HighReal b = m[1][2] / 2;
  const HighReal a = m[0][0] - b;
  HighReal scale = 0, dev = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const HighReal expect = (i == j ? a : HighReal(0)) + b * kSigmaDot[i][j];
      scale = std::max(scale, HighReal(abs(m[i][j])));
      dev = std::max(dev, HighReal(abs(m[i][j] - expect)));
    }
  if (dev > HighReal(1e-25) * scale + 100 * epsilon())
    throw std::logic_error(std::string(what) + " spin block is not rotationally invariant");
}

HamiltonianCache::Pair compute_pair(const HighReal& zmu, const HighReal& znu) {
  const ExponentPair p(zmu, znu);
  HamiltonianCache::Pair out;
  out.overlap = overlap(p);
  out.coulomb = coulomb(p);
  out.p2 = -laplacian(p);
  out.p4 = biharmonic(p);
  out.small[0] = coulomb_small_unscaled(p, 1)[0][0];
  out.small[1] = coulomb_small_unscaled(p, 2)[0][0];
  out.small_small = coulomb_ss_unscaled(p);
  check_invariant(out.small_small, "Coulomb (ss, ss)");
  const BreitBlock which[4] = {BreitBlock::b1, BreitBlock::b2, BreitBlock::b3, BreitBlock::b4};
  for (int k = 0; k < 4; ++k) {
    out.breit[k] = breit_block_unscaled(which[k], p);
    check_invariant(out.breit[k], "Breit");
  }
  return out;
}

// Block value at spinor components (r, c) for the ordered pair (mu, nu).
using BlockFn = std::function<SpinBlock(int r, int c, const HamiltonianCache::Pair&)>;

SymMatrix assemble(const HamiltonianCache& cache, SpinChannel channel, const BlockFn& block, const char* what) {
  const std::size_t n = cache.size();
  const std::size_t dim = operator_dimension(n, channel);
  Matrix m(dim, dim);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu) {
          const SpinBlock b = block(r, c, cache.pair(mu, nu));
          switch (channel) {
            case SpinChannel::full:
              for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) m((4 * r + x) * n + mu, (4 * c + y) * n + nu) = b[x][y];
              break;
            case SpinChannel::singlet:
              m(r * n + mu, c * n + nu) = singlet_value(b);
              break;
            case SpinChannel::triplet:
              m(r * n + mu, c * n + nu) = triplet_value(b);
              break;
          }
        }
  const HighReal scale = max_abs(m);
  const HighReal asym = max_abs(m - m.transposed());
  if (asym > HighReal(kSymmetryTolerance) * scale)
    throw std::logic_error(std::string(what) + " matrix is not symmetric (relative asymmetry " +
                           to_string(asym / scale, 3) + ")");
  return SymMatrix::symmetrized(m);
}

SpinBlock zero_block() { return spin_identity(HighReal(0)); }

}  // namespace

HamiltonianCache::HamiltonianCache(const BasisSet& basis, unsigned threads) : basis_(basis) {
  const std::size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("empty basis");
  pairs_.resize(n * n);
  // Every ordered pair is computed independently, so the symmetry check in
  // assembly really tests the closed forms.
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = 0; nu < n; ++nu) work.emplace_back(mu, nu);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, work.size()));
  auto run = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t w = begin; w < work.size(); w += stride) {
      const auto [mu, nu] = work[w];
      pairs_[mu * n + nu] = compute_pair(basis[mu], basis[nu]);
    }
  };
  if (threads <= 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          run(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    pool.clear();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
}

SymMatrix assemble_metric(const TwoBodySystem& sys, const HamiltonianCache& cache, SpinChannel channel) {
  sys.validate();
  const HighReal c2 = sys.c() * sys.c();
  const HighReal m1 = sys.m1, m2 = sys.m2;
  return assemble(
      cache, channel,
      [&](int r, int c, const HamiltonianCache::Pair& p) {
        if (r != c) return zero_block();
        switch (r) {
          case 0:
            return spin_identity(p.overlap);
          case 1:
            return spin_identity(p.p2 / (4 * c2 * m2 * m2));
          case 2:
            return spin_identity(p.p2 / (4 * c2 * m1 * m1));
          default:
            return spin_identity(p.p4 / (16 * c2 * c2 * m1 * m1 * m2 * m2));
        }
      },
      "metric");
}

SymMatrix assemble_bare(const TwoBodySystem& sys, const HamiltonianCache& cache, SpinChannel channel) {
  sys.validate();
  const HighReal c2 = sys.c() * sys.c();
  const HighReal m1 = sys.m1, m2 = sys.m2;
  return assemble(
      cache, channel,
      [&](int r, int c, const HamiltonianCache::Pair& p) {
        const int lo = std::min(r, c), hi = std::max(r, c);
        if (lo == 0 && hi == 1) return spin_identity(p.p2 / (2 * m2));
        if (lo == 0 && hi == 2) return spin_identity(p.p2 / (2 * m1));
        if (lo == 1 && hi == 3) return spin_identity(p.p4 / (8 * c2 * m1 * m2 * m2));
        if (lo == 2 && hi == 3) return spin_identity(p.p4 / (8 * c2 * m1 * m1 * m2));
        if (r == c && r == 1) return spin_identity(-p.p2 / (2 * m2));
        if (r == c && r == 2) return spin_identity(-p.p2 / (2 * m1));
        if (r == c && r == 3) return spin_identity(-(m1 + m2) * p.p4 / (8 * m1 * m1 * m2 * m2 * c2));
        return zero_block();
      },
      "bare Hamiltonian");
}

SymMatrix assemble_coulomb(const TwoBodySystem& sys, const HamiltonianCache& cache, SpinChannel channel) {
  sys.validate();
  const HighReal c2 = sys.c() * sys.c();
  const HighReal m1 = sys.m1, m2 = sys.m2, q = sys.q1q2;
  return assemble(
      cache, channel,
      [&](int r, int c, const HamiltonianCache::Pair& p) {
        if (r != c) return zero_block();
        switch (r) {
          case 0:
            return spin_identity(q * p.coulomb);
          case 1:
            return spin_identity(q * p.small[1] / (4 * m2 * m2 * c2));
          case 2:
            return spin_identity(q * p.small[0] / (4 * m1 * m1 * c2));
          default: {
            SpinBlock b = p.small_small;
            const HighReal f = q / (16 * m1 * m1 * m2 * m2 * c2 * c2);
            for (auto& row : b)
              for (auto& v : row) v *= f;
            return b;
          }
        }
      },
      "Coulomb");
}

SymMatrix assemble_breit(const TwoBodySystem& sys, const HamiltonianCache& cache, SpinChannel channel) {
  sys.validate();
  const HighReal f = sys.q1q2 / (4 * sys.c() * sys.c() * sys.m1 * sys.m2);
  return assemble(
      cache, channel,
      [&](int r, int c, const HamiltonianCache::Pair& p) {
        if (r + c != 3) return zero_block();
        SpinBlock b = p.breit[r];  // (0,3) b1, (1,2) b2, (2,1) b3, (3,0) b4
        for (auto& row : b)
          for (auto& v : row) v *= f;
        return b;
      },
      "Breit");
}

SymMatrix assemble_metric(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel) {
  return assemble_metric(sys, HamiltonianCache(basis), channel);
}
SymMatrix assemble_bare(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel) {
  return assemble_bare(sys, HamiltonianCache(basis), channel);
}
SymMatrix assemble_coulomb(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel) {
  return assemble_coulomb(sys, HamiltonianCache(basis), channel);
}
SymMatrix assemble_breit(const TwoBodySystem& sys, const BasisSet& basis, SpinChannel channel) {
  return assemble_breit(sys, HamiltonianCache(basis), channel);
}

void write_triplets(const SymMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix dump " + path.string());
  out << "# row col value (dim " << m.dim() << ")\n";
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (m(i, j) != 0) out << i << ' ' << j << ' ' << to_string(m(i, j)) << '\n';
  if (!out) throw std::runtime_error("failed writing matrix dump " + path.string());
}

}  // namespace nopair
